import hashlib
import time

from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from services.core_model import Datastore, Digest, MalformedProofError
from services.crypto_service import hash_bytes, hash_raw
from services.zks_service import (
    DEPTH,
    EMPTY_DIGESTS,
    EMPTY_ROOT,
    ZERO32,
    Commitment,
    ProofKind,
    Seed,
    SparseMerkleTree,
    ZksProof,
    commit,
    leaf_digest,
    query,
    root_from_path,
    verify,
)
from tests.strategies import canonical_id_lists, seeds

ABSENT = ["absent@0.0.0@NPM", "also-absent@9@CARGO", "org.example:ghost@1@MAVEN"]


def _label(value):
    return hash_bytes(value.encode("utf-8"))


def _verifies(commitment, label, value, proof_bytes):
    try:
        proof = ZksProof.from_bytes(proof_bytes)
    except MalformedProofError:
        return False
    return verify(commitment, label, value, proof)


def test_empty_digests_chain():
    assert EMPTY_DIGESTS[DEPTH] == ZERO32
    assert EMPTY_DIGESTS[DEPTH - 1] == hash_raw(b"\x01", ZERO32, ZERO32)
    assert SparseMerkleTree.from_leaves({}).root == EMPTY_ROOT.value


def test_empty_datastore_commits_to_empty_root():
    commitment, state = commit(Datastore(), Seed(bytes(32)))
    assert commitment.root == EMPTY_ROOT
    proof, value = query(state, _label(ABSENT[0]))
    assert value is None and proof.kind is ProofKind.NON_INCLUSION
    assert proof.siblings == ()
    assert verify(commitment, _label(ABSENT[0]), None, proof)


def test_with_leaf_matches_bulk_build():
    leaves = {hash_bytes(bytes([i])).as_int(): hash_bytes(bytes([i, i])).value for i in range(20)}
    incremental = SparseMerkleTree.from_leaves({})
    for position, digest in leaves.items():
        before = incremental.root
        incremental = incremental.with_leaf(position, digest)
        assert incremental.root != before
    assert incremental.root == SparseMerkleTree.from_leaves(leaves).root
    position = next(iter(leaves))
    bitmap, siblings = incremental.path(position)
    assert root_from_path(position, leaves[position], bitmap, siblings) == incremental.root


def _blake(*parts):
    h = hashlib.blake2b(digest_size=32)
    for part in parts:
        h.update(part)
    return h.digest()


def _reference_root(leaves, depth=0, prefix=0):
    """Naive recursion over the leaf/node equations, one subtree at a time."""
    under = {p: d for p, d in leaves.items() if p >> (256 - depth) == prefix} if depth else leaves
    if not under:
        empty = bytes(32)
        for _ in range(256 - depth):
            empty = _blake(b"\x01", empty, empty)
        return empty
    if depth == 256:
        return next(iter(under.values()))
    left = _reference_root(under, depth + 1, prefix << 1)
    right = _reference_root(under, depth + 1, (prefix << 1) | 1)
    return _blake(b"\x01", left, right)


def test_commitment_matches_reference_recomputation():
    seed = b"\x01" * 32
    leaves = {}
    for value in ("a@1@NPM", "b@1@NPM"):
        label = hashlib.blake2b(value.encode("utf-8"), digest_size=32).digest()
        salt = _blake(b"\x02", seed, label)
        value_hash = hashlib.blake2b(value.encode("utf-8"), digest_size=32).digest()
        leaves[int.from_bytes(label, "big")] = _blake(b"\x00", salt, label, value_hash)

    commitment, _ = commit(Datastore.from_canonical_ids(["b@1@NPM", "a@1@NPM"]), Seed(seed))
    assert commitment.root.value == _reference_root(leaves)


def test_with_leaf_leaves_receiver_untouched():
    leaves = {hash_bytes(bytes([i])).as_int(): hash_bytes(bytes([i, 1])).value for i in range(8)}
    base = SparseMerkleTree.from_leaves(leaves)
    position = next(iter(leaves))
    replaced = base.with_leaf(position, ZERO32)
    added = base.with_leaf(hash_bytes(b"new").as_int(), ZERO32)

    assert base.root == SparseMerkleTree.from_leaves(leaves).root
    assert base.leaf(position) == leaves[position]
    assert replaced.leaf(position) == ZERO32
    assert len(replaced) == len(base) == 8
    assert len(added) == 9


def test_sequential_inserts_scale_linearly():
    positions = [hash_bytes(i.to_bytes(4, "big")).as_int() for i in range(1000)]
    tree = SparseMerkleTree.from_leaves({})
    start = time.perf_counter()
    for position in positions:
        tree = tree.with_leaf(position, ZERO32)
    elapsed = time.perf_counter() - start
    assert len(tree) == 1000
    assert elapsed < 2.0


def test_commitment_is_deterministic_per_seed():
    store = Datastore.from_canonical_ids(["a@1@NPM", "b@2@CARGO"])
    assert commit(store, Seed(bytes(32)))[0] == commit(store, Seed(bytes(32)))[0]
    assert commit(store, Seed(bytes(32)))[0] != commit(store, Seed(b"\x01" * 32))[0]


@settings(max_examples=500, deadline=None)
@given(ids=canonical_id_lists(), seed=seeds)
def test_completeness(ids, seed):
    store = Datastore.from_canonical_ids(ids)
    commitment, state = commit(store, Seed(seed))
    for value in ids:
        proof, returned = query(state, _label(value))
        assert returned == value
        assert proof.kind is ProofKind.INCLUSION
        assert verify(commitment, _label(value), value, ZksProof.from_hex(proof.to_hex()))
    for value in ABSENT:
        if value in ids:
            continue
        proof, returned = query(state, _label(value))
        assert returned is None
        assert proof.kind is ProofKind.NON_INCLUSION
        assert verify(commitment, _label(value), None, ZksProof.from_hex(proof.to_hex()))
        assert not verify(commitment, _label(value), value, proof)


@settings(max_examples=500, deadline=None)
@given(ids=canonical_id_lists(), seed=seeds, data=st.data())
def test_single_byte_mutations_fail(ids, seed, data):
    commitment, state = commit(Datastore.from_canonical_ids(ids), Seed(seed))
    value = data.draw(st.sampled_from(ids)) if ids and data.draw(st.booleans()) else ABSENT[0]
    label = _label(value)
    proof, returned = query(state, label)
    raw = proof.to_bytes()
    assert _verifies(commitment, label, returned, raw)

    delta = data.draw(st.integers(1, 255))
    target = data.draw(st.sampled_from(["proof", "commitment", "value"] if returned else ["proof", "commitment"]))
    if target == "proof":
        index = data.draw(st.integers(0, len(raw) - 1))
        mutated = bytearray(raw)
        mutated[index] ^= delta
        assert not _verifies(commitment, label, returned, bytes(mutated))
    elif target == "commitment":
        index = data.draw(st.integers(0, 31))
        root = bytearray(commitment.root.value)
        root[index] ^= delta
        assert not _verifies(Commitment(Digest(bytes(root))), label, returned, raw)
    else:
        encoded = bytearray(returned.encode("utf-8"))
        index = data.draw(st.integers(0, len(encoded) - 1))
        encoded[index] ^= delta
        try:
            mutated_value = encoded.decode("utf-8")
        except UnicodeDecodeError:
            return
        assert not _verifies(commitment, label, mutated_value, raw)


@settings(max_examples=500, deadline=None)
@given(ids=canonical_id_lists(), other=canonical_id_lists(), seed=seeds, other_seed=seeds)
def test_cross_state_replay_fails(ids, other, seed, other_seed):
    commitment, state = commit(Datastore.from_canonical_ids(ids), Seed(seed))
    if seed != other_seed and ids:
        foreign, _ = commit(Datastore.from_canonical_ids(ids), Seed(other_seed))
        for value in ids[:4]:
            proof, _ = query(state, _label(value))
            assert not verify(foreign, _label(value), value, proof)
    if sorted(set(other)) != sorted(set(ids)) and other:
        foreign, _ = commit(Datastore.from_canonical_ids(other), Seed(seed))
        for value in (ids + ABSENT)[:4]:
            proof, returned = query(state, _label(value))
            assert not verify(foreign, _label(value), returned, proof)


def test_proof_kind_must_match_value():
    commitment, state = commit(Datastore.from_canonical_ids(["a@1@NPM"]), Seed(bytes(32)))
    proof, value = query(state, _label("a@1@NPM"))
    assert not verify(commitment, _label("a@1@NPM"), None, proof)
    assert not verify(commitment, _label("b@1@NPM"), value, proof)
    assert not verify(Commitment(commitment.root, "sha-256"), _label("a@1@NPM"), value, proof)


@pytest.mark.parametrize("text", ("", "zz", "02" + "00" * 70, "01" * 3))
def test_malformed_proof_bytes(text):
    with pytest.raises(MalformedProofError):
        ZksProof.from_hex(text)


def test_wire_format_layout():
    commitment, state = commit(Datastore.from_canonical_ids(["a@1@NPM", "b@1@NPM"]), Seed(bytes(32)))
    proof, _ = query(state, _label("a@1@NPM"))
    raw = proof.to_bytes()
    assert raw[0] == 0x01 and raw[1] == 0x01
    assert raw[2:34] == _label("a@1@NPM").value
    encoded = b"a@1@NPM"
    assert raw[66:68] == len(encoded).to_bytes(2, "big")
    assert raw[68:68 + len(encoded)] == encoded
    assert len(raw) == 68 + len(encoded) + 32 + 32 * len(proof.siblings)
    assert ZksProof.from_bytes(raw) == proof


def _subtree_root(leaf, position, depth):
    """Root of a subtree at `depth` holding only `leaf` at `position`."""
    node = leaf
    for index in range(DEPTH - 1, depth - 1, -1):
        empty = EMPTY_DIGESTS[index + 1]
        node = hash_raw(b"\x01", empty, node) if (position >> (DEPTH - 1 - index)) & 1 else hash_raw(b"\x01", node, empty)
    return node


def _dictionary_attack(proof, candidates, salt_for):
    """Which candidate ids appear as a single-leaf sibling subtree in the proof."""
    hits = set()
    for value in candidates:
        label = _label(value)
        position = label.as_int()
        leaf = leaf_digest(salt_for(label), label.value, hash_raw(value.encode("utf-8")))
        for depth in range(1, DEPTH + 1):
            if _subtree_root(leaf, position, depth) in proof.siblings:
                hits.add(value)
                break
    return hits


def test_salting_defeats_sibling_dictionary_attack():
    members = ["left-pad@1.3.0@NPM"]
    store = Datastore.from_canonical_ids(members)
    absent = _label("react@17.0.2@NPM")
    candidates = members + ["lodash@4.17.21@NPM", "react@17.0.2@NPM", "koa@2.13.4@NPM"]

    unsalted = SparseMerkleTree.from_leaves(
        {label.as_int(): leaf_digest(ZERO32, label.value, hash_raw(v.encode("utf-8"))) for label, v in store.entries}
    )
    bitmap, siblings = unsalted.path(absent.as_int())
    control = ZksProof(ProofKind.NON_INCLUSION, absent, bitmap, siblings)
    assert _dictionary_attack(control, candidates, lambda label: ZERO32) == set(members)

    _, state = commit(store, Seed(b"\x42" * 32))
    proof, _ = query(state, absent)
    assert _dictionary_attack(proof, candidates, lambda label: ZERO32) == set()
