from hypothesis import given, settings
import pytest

from services.core_model import (
    ComponentId,
    Datastore,
    Digest,
    Ecosystem,
    MalformedComponentError,
    Verdict,
    VerdictKind,
    canonical_id,
    parse_id,
)
from services.crypto_service import hash_bytes
from tests.strategies import component_ids


@pytest.mark.parametrize(
    "component,expected",
    (
        (ComponentId("log4j-core", "2.8.2", Ecosystem.MAVEN, "org.apache.logging.log4j"),
         "org.apache.logging.log4j:log4j-core@2.8.2@MAVEN"),
        (ComponentId("react-server-dom-webpack", "19.0.0", Ecosystem.NPM), "react-server-dom-webpack@19.0.0@NPM"),
        (ComponentId("runc", "v1.1.10", Ecosystem.GOLANG, "github.com/opencontainers"),
         "github.com/opencontainers:runc@v1.1.10@GOLANG"),
        (ComponentId("strapi", "4.4.4", Ecosystem.NPM, "strapi"), "strapi:strapi@4.4.4@NPM"),
    ),
)
def test_canonical_id(component, expected):
    assert canonical_id(component) == expected
    assert component.canonical == expected
    assert parse_id(expected) == component


@settings(max_examples=300)
@given(component=component_ids())
def test_parse_inverts_canonical(component):
    assert parse_id(canonical_id(component)) == component


@pytest.mark.parametrize(
    "kwargs",
    (
        dict(name="", version="1.0", ecosystem=Ecosystem.NPM),
        dict(name="a", version="", ecosystem=Ecosystem.NPM),
        dict(name="a@b", version="1.0", ecosystem=Ecosystem.NPM),
        dict(name="a:b", version="1.0", ecosystem=Ecosystem.NPM),
        dict(name="a", version="1@0", ecosystem=Ecosystem.NPM),
        dict(name="a", version="1.0", ecosystem=Ecosystem.NPM, group=""),
        dict(name="a", version="1.0", ecosystem=Ecosystem.NPM, group="g@h"),
        dict(name="a b", version="1.0", ecosystem=Ecosystem.NPM),
        dict(name="a", version="1.0", ecosystem="NPM"),
    ),
)
def test_component_rejects_bad_coordinates(kwargs):
    with pytest.raises(MalformedComponentError):
        ComponentId(**kwargs)


@pytest.mark.parametrize("text", ("log4j", "a@1.0", "a@1.0@PYPI", "@1.0@NPM", "a@@NPM"))
def test_parse_id_rejects(text):
    with pytest.raises(MalformedComponentError):
        parse_id(text)


def test_ecosystem_tokens():
    assert Ecosystem.from_token("CARGO") is Ecosystem.CARGO
    assert Ecosystem.from_purl_type("golang") is Ecosystem.GOLANG
    assert Ecosystem.from_purl_type("pypi") is None
    with pytest.raises(MalformedComponentError):
        Ecosystem.from_token("cargo")


def test_digest_hex():
    digest = hash_bytes(b"")
    assert Digest.from_hex(digest.hex()) == digest
    assert str(digest) == digest.hex()
    with pytest.raises(ValueError):
        Digest.from_hex(digest.hex().upper())
    with pytest.raises(ValueError):
        Digest(b"\x00" * 31)


def test_datastore_sorted_and_deduplicated():
    ids = ["b@1@NPM", "a@1@NPM", "b@1@NPM", "c@2@CARGO"]
    store = Datastore.from_canonical_ids(ids)
    assert len(store) == 3
    labels = store.labels()
    assert [l.value for l in labels] == sorted(l.value for l in labels)
    assert store.lookup(hash_bytes(b"a@1@NPM")) == "a@1@NPM"
    assert store.lookup(hash_bytes(b"z@1@NPM")) is None


def test_datastore_validates_entries():
    a = (hash_bytes(b"a@1@NPM"), "a@1@NPM")
    b = (hash_bytes(b"b@1@NPM"), "b@1@NPM")
    with pytest.raises(ValueError):
        Datastore(((hash_bytes(b"x"), "a@1@NPM"),))
    with pytest.raises(ValueError):
        Datastore(tuple(sorted([a, b], key=lambda e: e[0].value, reverse=True)))
    with pytest.raises(ValueError):
        Datastore((a, a))


def test_verdict_str():
    assert str(Verdict(VerdictKind.AFFECTED, "x@1@NPM")) == "Affected: x@1@NPM"
    assert str(Verdict(VerdictKind.NOT_AFFECTED)) == "NotAffected"
