import pytest

import ostr


def test_fixture_counts():
    alg = ostr.imp_algebra()
    assert alg.name == "IMP"
    assert len(alg.sorts) == 10
    assert len(alg.subsorts) == 5
    assert len(alg.operators) == 26
    assert len(alg.rules) == 13


def test_check_and_translate():
    alg = ostr.imp_algebra()
    report = ostr.check(alg)
    assert report.strictly_sensible and report.translatable
    assert report.violations == []
    tr = ostr.translate(alg)
    assert sorted(tr.casts) == sorted(
        ["Cast_nat_to_int", "Cast_int_to_AExp", "Cast_Id_to_AExp", "Cast_bool_to_BExp", "Cast_Block_to_Stmt"]
    )
    assert len(tr.algebra.rules) == len(alg.rules)
    assert tr.algebra.core_equation_count == 0
    assert "-int(Cast_nat_to_int(0)) => Cast_nat_to_int(0)" in tr.algebra.rules


def test_terms_round_trip():
    tr = ostr.translate(ostr.imp_algebra())
    p = tr.tr_term("+(0, v(0))")
    assert p == "+AExp(Cast_int_to_AExp(Cast_nat_to_int(0)), Cast_Id_to_AExp(v(0)))"
    assert tr.untranslate(p) == "+(0, v(0))"


def test_tie_breaks_agree_up_to_core_equality():
    real = ostr.imp_real_algebra()
    lo = ostr.translate(real, tie="min")
    hi = ostr.translate(real, tie="max")
    a, b = lo.tr_term("+(0, 0)"), hi.tr_term("+(0, 0)")
    assert a != b
    assert lo.canonicalize(a) == lo.canonicalize(b)
    with pytest.raises(ValueError):
        ostr.translate(real, tie="middle")


def test_print_parse():
    alg = ostr.imp_algebra()
    assert ostr.parse_os_algebra(str(alg)) == alg
    tr = ostr.translate(ostr.imp_real_algebra())
    assert ostr.parse_ms_algebra(str(tr.algebra)) == tr.algebra


def test_errors_carry_code_and_location():
    with pytest.raises(ostr.OstrError) as info:
        ostr.parse_os_algebra("algebra A\nsorts a\nop c a -> a\n")
    assert info.value.code == "SyntaxError"
    assert info.value.line == 3
    with pytest.raises(ostr.OstrError) as info:
        ostr.translate(ostr.parse_os_algebra("algebra B\nsorts a b\nsubsorts a < b\nop c : -> a\nop d : -> b\nrule c => d\n"))
    assert info.value.code == "NotStrictlySensible"


def test_rewrite_and_bisim():
    alg = ostr.imp_algebra()
    steps, complete = ostr.rewrite_step(alg, "-(true)")
    assert complete
    assert steps == [(2, "false")]
    report = ostr.run_bisim(alg, depth=1, eclass_depth=8)
    assert report.passed
    assert report.forward_failures == 0 and report.backward_failures == 0
    assert report.terms_checked == 22
