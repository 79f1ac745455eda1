"""Smoke test for the pytmwords extension module."""

import pytmwords as t


def main():
    assert t.binom_words("101000", "110") == 3
    assert t.binom_words("01", []) == 1
    assert t.extended_parikh("010001", 2) == [4, 2, 6, 5, 3, 1]
    assert t.equivalent_k("010001", "001010", 2)
    assert not t.equivalent_k("010001", "001010", 3)

    w = t.tm_prefix(3, 9)
    assert str(w) == "012120201" and len(w) == 9
    assert w == t.Word([0, 1, 2, 1, 2, 0, 2, 0, 1])
    assert t.Morphism.sigma(3).apply("0") == t.Word("012")
    assert t.Morphism(["01", "10"]).fixed_point_prefix(0, 8) == t.Word("01101001")
    assert all(t.digit_sum_letter(4, i) == x for i, x in enumerate(t.tm_prefix(4, 500).letters()))

    rows = t.complexity_profile(3, 2, 9, 12)
    assert rows == [(9, 49), (10, 45), (11, 45), (12, 48)], rows
    assert [t.binomial2_closed(3, n) for n, _ in rows] == [v for _, v in rows]
    assert t.abelian_closed(4, 8) == 17
    assert t.tm2_binomial_closed(2, 5) == 8

    assert t.counterexample(corrected=True)["holds"]
    assert not t.counterexample()["equivalent2"]

    report = t.run_suite("thm13", m=3)
    assert report["passed"], report
    scan = t.conjecture_scan(2, 3, 32)
    assert scan["verdict"]["status"] == "consistent"

    try:
        t.binom_words("0" * 300, "0" * 150)
    except OverflowError:
        pass
    else:
        raise AssertionError("expected OverflowError")
    print("pytmwords smoke test passed")


if __name__ == "__main__":
    main()
