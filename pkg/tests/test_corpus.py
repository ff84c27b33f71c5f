from __future__ import annotations

import pytest

from simrel import (
    CorpusIndex,
    HitTable,
    MalformedInput,
    PairNotFound,
    Term,
    TokenizerConfig,
    build_index,
    hit_counts,
    tokenize,
)
from simrel.corpus import Document


# --- tokenizer ----------------------------------------------------------------


def test_tokenize_defaults():
    assert tokenize("The Horse, the rider!") == ["the", "horse", "the", "rider"]


def test_tokenize_config_switches():
    raw = TokenizerConfig(lowercase=False, strip_punctuation=False)
    assert tokenize("The Horse,", raw) == ["The", "Horse,"]


def test_term_parse():
    assert Term.parse("  Horse ") == Term("horse", "word")
    assert Term.parse("Horse  Rider") == Term("horse rider", "phrase")
    with pytest.raises(MalformedInput):
        Term.parse("...")


# --- index construction ---------------------------------------------------------


def test_toy_index_counts(toy_index):
    assert toy_index.singleton_count("k1") == 3
    assert toy_index.singleton_count("k8") == 1
    assert toy_index.singleton_count("nope") == 0
    assert toy_index.doubleton_count("k1", "k5") == 2
    assert toy_index.doubleton_count("k8", "k5") == 0
    assert toy_index.doubleton_count("k1", "k1") == toy_index.singleton_count("k1")


def test_toy_index_shape(toy_index):
    assert len(toy_index.documents) == 3
    assert len(toy_index.vocabulary()) == 8
    assert toy_index.omega_cardinality == 13
    assert toy_index.psi == 24


def test_probabilities(toy_index):
    assert toy_index.probability("k1") == 3 / 13
    assert toy_index.probability(("k1", "k5")) == 2 / 13
    assert toy_index.probability("nope") == 0.0


def test_psi_normalized(toy_index):
    assert toy_index.psi_normalized("k1") == 3 / 24
    for t in toy_index.vocabulary():
        assert toy_index.psi_normalized(t, t) == toy_index.psi_normalized(t)
    assert toy_index.psi_normalized("nope") == 0.0


def test_psi_brute_force_matches(toy_index):
    assert toy_index.psi_brute_force() == toy_index.psi


def test_psi_vs_omega_reported_not_asserted(toy_index):
    stats = toy_index.stats()
    assert "psi_ge_omega" in stats
    assert stats["psi_ge_omega"] is (stats["psi"] >= stats["omega_cardinality"])


def test_omega_modes(toy_docs):
    assert build_index(toy_docs, omega_mode="sum-unique").omega_cardinality == 13
    assert build_index(toy_docs, omega_mode="vocabulary").omega_cardinality == 8
    assert build_index(toy_docs, omega_mode="documents").omega_cardinality == 3
    with pytest.raises(MalformedInput):
        build_index(toy_docs, omega_mode="imaginary")


def test_empty_corpus_rejected():
    with pytest.raises(MalformedInput):
        build_index([])


def test_duplicate_doc_ids_rejected():
    with pytest.raises(MalformedInput):
        build_index([("d", "a"), ("d", "b")])


def test_single_empty_document():
    idx = build_index([("d1", "")])
    assert len(idx.vocabulary()) == 0
    assert idx.psi == 0
    with pytest.raises(MalformedInput):
        idx.probability("x")
    with pytest.raises(MalformedInput):
        idx.psi_normalized("x")


def test_two_identical_one_token_documents():
    idx = build_index([("d1", "alpha"), ("d2", "alpha")])
    assert idx.singleton_count("alpha") == 2
    assert idx.psi == 0


def test_doubleton_symmetry_and_bound_exhaustive(toy_index):
    vocab = toy_index.vocabulary()
    for x in vocab:
        for y in vocab:
            d = toy_index.doubleton_count(x, y)
            assert d == toy_index.doubleton_count(y, x)
            assert d <= min(toy_index.singleton_count(x), toy_index.singleton_count(y))


def test_adding_a_document_never_decreases_counts(toy_docs):
    base = build_index(toy_docs)
    grown = build_index(toy_docs + [("s4", "k1 k5 k9")])
    vocab = base.vocabulary()
    for x in vocab:
        assert grown.singleton_count(x) >= base.singleton_count(x)
        for y in vocab:
            assert grown.doubleton_count(x, y) >= base.doubleton_count(x, y)


def test_phrase_terms_match_contiguous_runs():
    idx = build_index(
        [
            ("d1", "the brown horse runs"),
            ("d2", "the horse and the rider"),
            ("d3", "rider of the brown horse"),
        ]
    )
    assert idx.singleton_count("brown horse") == 2
    assert idx.singleton_count("horse rider") == 0
    assert idx.doubleton_count("brown horse", "rider") == 1


# --- persistence -----------------------------------------------------------------


def test_index_save_load_round_trip(toy_index, tmp_path):
    path = tmp_path / "toy.index.json"
    toy_index.save(path)
    loaded = CorpusIndex.load(path)
    assert loaded.omega_cardinality == toy_index.omega_cardinality
    assert loaded.psi == toy_index.psi
    assert loaded.postings == toy_index.postings
    assert loaded.singleton_count("k1") == 3


def test_index_file_is_deterministic(toy_docs, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    build_index(toy_docs).save(a)
    build_index(toy_docs).save(b)
    assert a.read_bytes() == b.read_bytes()


def test_index_load_rejects_bad_magic(tmp_path):
    path = tmp_path / "bogus.json"
    path.write_text('{"format": "something-else", "version": 1}')
    with pytest.raises(MalformedInput, match="magic"):
        CorpusIndex.load(path)
    path.write_text("not json at all")
    with pytest.raises(MalformedInput):
        CorpusIndex.load(path)


def test_index_load_rejects_tampered_stats(toy_index, tmp_path):
    path = tmp_path / "toy.json"
    path.write_text(toy_index.to_json().replace('"psi":24', '"psi":25'))
    with pytest.raises(MalformedInput, match="inconsistent"):
        CorpusIndex.load(path)


def test_index_constructor_checks():
    with pytest.raises(MalformedInput):
        CorpusIndex([])
    with pytest.raises(MalformedInput):
        CorpusIndex([Document("d", ("a",)), Document("d", ("b",))])


# --- hit tables --------------------------------------------------------------------


def test_hit_table_lookup_is_unordered(data_dir):
    table = HitTable.load(data_dir / "horse_rider_google.csv")
    h = table.lookup("horse", "rider")
    assert (h.f_x, h.f_y, h.f_xy) == (150_000_000, 57_000_000, 12_400_000)
    assert h.n_total is None
    swapped = table.lookup("Rider", "HORSE")
    assert (swapped.f_x, swapped.f_y) == (57_000_000, 150_000_000)
    assert swapped.f_xy == 12_400_000


def test_hit_table_n_metadata(data_dir):
    table = HitTable.load(data_dir / "horse_rider_ngd.csv")
    assert table.n_total == 8_058_044_651
    assert table.lookup("horse", "rider").n_total == 8_058_044_651


def test_hit_table_missing_pair(data_dir):
    table = HitTable.load(data_dir / "horse_rider_google.csv")
    with pytest.raises(PairNotFound):
        table.lookup("horse", "unicorn")


def test_hit_table_rejects_duplicates():
    text = "term_x,term_y,f_x,f_y,f_xy\na,b,1,2,1\nb,a,2,1,1\n"
    with pytest.raises(MalformedInput, match="duplicate"):
        HitTable.from_text(text)


def test_hit_table_rejects_bad_header():
    with pytest.raises(MalformedInput, match="header"):
        HitTable.from_text("x,y,fx,fy,fxy\na,b,1,2,1\n")


def test_hit_table_rejects_bad_counts():
    with pytest.raises(MalformedInput):
        HitTable.from_text("term_x,term_y,f_x,f_y,f_xy\na,b,1,2,many\n")
    with pytest.raises(MalformedInput):
        HitTable.from_text("term_x,term_y,f_x,f_y,f_xy\na,b,-1,2,1\n")


def test_hit_table_rows_kept_as_given():
    # f_xy above both singles is suspicious but stored untouched.
    table = HitTable.from_text("term_x,term_y,f_x,f_y,f_xy\na,b,5,3,9\n")
    h = table.lookup("a", "b")
    assert h.f_xy == 9


# --- provider bridge ------------------------------------------------------------------


def test_hit_counts_from_index(toy_index):
    h = hit_counts(toy_index, "k1", "k5")
    assert (h.f_x, h.f_y, h.f_xy, h.n_total) == (3, 2, 2, 3)


def test_hit_counts_self_pair(toy_index):
    h = hit_counts(toy_index, "k1", "k1")
    assert h.f_x == h.f_y == h.f_xy == 3


def test_hit_counts_from_table(data_dir):
    table = HitTable.load(data_dir / "horse_rider_yahoo.csv")
    h = hit_counts(table, "horse", "rider")
    assert (h.f_x, h.f_y, h.f_xy) == (737_000_000, 256_000_000, 52_000_000)


def test_hit_counts_rejects_unknown_provider():
    with pytest.raises(MalformedInput):
        hit_counts(object(), "a", "b")
