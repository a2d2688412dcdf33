#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "ostr/error.hpp"

using namespace ostr;
using test::ms;
using test::os;
using test::pat;
using test::S;

namespace {

std::vector<std::string> names(const std::vector<CastOperator>& casts) {
  std::vector<std::string> out;
  for (const auto& c : casts) out.push_back(c.name);
  return out;
}

std::string eq_text(const Equation& e) { return to_string(e.lhs) + " = " + to_string(e.rhs); }
std::string rule_text(const Rule& r) { return to_string(r.lhs) + " => " + to_string(r.rhs); }

}  // namespace

TEST_SUITE("translation") {
  TEST_CASE("representatives") {
    auto sel = select_representatives(test::imp());
    auto plus_nat = Operator{"+", {S("nat"), S("nat")}, S("AExp")};
    auto plus_int = Operator{"+", {S("int"), S("int")}, S("AExp")};
    auto plus_aexp = Operator{"+", {S("AExp"), S("AExp")}, S("AExp")};
    auto plus_bool = Operator{"+", {S("bool"), S("bool")}, S("BExp")};
    auto plus_bexp = Operator{"+", {S("BExp"), S("BExp")}, S("BExp")};
    CHECK(sel.representative_of.at(plus_nat) == plus_aexp);
    CHECK(sel.representative_of.at(plus_int) == plus_aexp);
    CHECK(sel.representative_of.at(plus_bool) == plus_bexp);
    auto neg_nat = Operator{"-", {S("nat")}, S("int")};
    CHECK(sel.representative_of.at(neg_nat) == Operator{"-", {S("int")}, S("int")});
    // 26 operators, five of them absorbed by a larger one.
    CHECK(sel.operators.size() == 21);
    auto zero = Operator{"0", {}, S("nat")};
    CHECK(sel.representative_of.at(zero) == zero);
  }

  TEST_CASE("renaming") {
    auto sel = select_representatives(test::imp());
    auto names = rename_constructors(sel.operators, test::imp().signature.poset());
    CHECK(names.at(Operator{"+", {S("AExp"), S("AExp")}, S("AExp")}) == "+AExp");
    CHECK(names.at(Operator{"+", {S("BExp"), S("BExp")}, S("BExp")}) == "+BExp");
    CHECK(names.at(Operator{"-", {S("int")}, S("int")}) == "-int");
    CHECK(names.at(Operator{"-", {S("BExp")}, S("BExp")}) == "-BExp");
    CHECK(names.at(Operator{"s", {S("nat")}, S("nat")}) == "s");
  }

  TEST_CASE("rename collisions") {
    // Two f operators with the same target: the target suffix alone is not enough.
    auto alg = parse_os_algebra("algebra C\nsorts a b c\nop f : a -> c\nop f : b -> c\n");
    auto sel = select_representatives(alg);
    auto n = rename_constructors(sel.operators, alg.signature.poset());
    CHECK(n.at(Operator{"f", {S("a")}, S("c")}) == "fc_a");
    CHECK(n.at(Operator{"f", {S("b")}, S("c")}) == "fc_b");
    // Both the short and the long form of a new name are already constructors.
    auto taken =
        parse_os_algebra("algebra T\nsorts a b\nop f : a -> a\nop f : b -> b\nop fa : b -> a\nop fa_a : b -> b\n");
    auto st = select_representatives(taken);
    try {
      rename_constructors(st.operators, taken.signature.poset());
      FAIL("expected a collision");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::rename_collision);
    }
  }

  TEST_CASE("casts") {
    auto casts = generate_cast_operators(test::imp().signature.poset());
    CHECK(names(casts) == std::vector<std::string>{"Cast_nat_to_int", "Cast_int_to_AExp", "Cast_Id_to_AExp",
                                                   "Cast_bool_to_BExp", "Cast_Block_to_Stmt"});
    CHECK(casts[0].as_operator() == Operator{"Cast_nat_to_int", {S("nat")}, S("int")});
    auto none = SortPoset::build({S("a")}, {});
    CHECK(generate_cast_operators(none).empty());
    auto ab = SortPoset::build({S("a"), S("b")}, {{S("a"), S("b")}});
    auto one = generate_cast_operators(ab);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == CastOperator{S("a"), S("b"), "Cast_a_to_b"});
    CHECK_THROWS_AS(generate_cast_operators(ab, {"Cast_a_to_b"}), Error);
  }

  TEST_CASE("canonical paths in the map") {
    const auto& tm = test::imp_tr().map;
    CHECK(canonical_path(tm, S("nat"), S("AExp")) == SortPath{S("nat"), S("int"), S("AExp")});
    CHECK(canonical_path(test::imp_real_tr().map, S("nat"), S("AExp")) == SortPath{S("nat"), S("int"), S("AExp")});
  }

  TEST_CASE("term translation") {
    const auto& tm = test::imp_tr().map;
    auto lhs = tr_term(tm, pat("+(s(A:nat), B:nat)"));
    CHECK(to_string(lhs.term) ==
          "+AExp(Cast_int_to_AExp(Cast_nat_to_int(s(A:nat))), Cast_int_to_AExp(Cast_nat_to_int(B:nat)))");
    CHECK(lhs.sort == S("AExp"));
    CHECK(tr_term(tm, os("0"), S("nat")) == os("0"));
    CHECK(tr_term(tm, os("true"), S("BExp")) == ms("Cast_bool_to_BExp(true)"));
    CHECK(tr_term(tm, os("-(0)")) == ms("-int(Cast_nat_to_int(0))"));
    try {
      tr_term(tm, os("true"), S("nat"));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::untranslatable_sort);
    }
  }

  TEST_CASE("core equations") {
    CHECK(generate_core_equations(test::imp_tr().map).empty());
    auto core = generate_core_equations(test::imp_real_tr().map);
    REQUIRE(core.size() == 1);
    CHECK(eq_text(core[0]) ==
          "Cast_int_to_AExp(Cast_nat_to_int(A:nat)) = Cast_real_to_AExp(Cast_nat_to_real(A:nat))");
    auto chain = parse_os_algebra("algebra K\nsorts a b c\nsubsorts a < b; b < c\nop x : -> a\n");
    CHECK(generate_core_equations(make_translation_map(chain)).empty());
  }

  TEST_CASE("equation translation") {
    const auto& tr = test::imp_tr();
    const auto& e = tr.algebra.equations;
    REQUIRE(e.size() == test::imp().equations.size());
    CHECK(eq_text(e[0]) == "+AExp(Cast_int_to_AExp(Cast_nat_to_int(0)), A:AExp) = A:AExp");
    CHECK(eq_text(e[2]) == "-int(-int(A:int)) = A:int");
    CHECK(eq_text(e[7]) == "mapcat(A:Map, B:Map) = mapcat(B:Map, A:Map)");
    const auto& er = test::imp_real_tr().algebra;
    CHECK(er.equations.size() == test::imp_real().equations.size() + 1);
    CHECK(er.core_equation_count() == 1);
    CHECK(eq_text(er.equations.back()) ==
          "Cast_int_to_AExp(Cast_nat_to_int(A:nat)) = Cast_real_to_AExp(Cast_nat_to_real(A:nat))");
  }

  TEST_CASE("rule translation") {
    const auto& r = test::imp_tr().algebra.rules;
    REQUIRE(r.size() == test::imp().rules.size());
    CHECK(rule_text(r[0]) == "-int(Cast_nat_to_int(0)) => Cast_nat_to_int(0)");
    CHECK(rule_text(r[2]) == "-BExp(Cast_bool_to_BExp(true)) => Cast_bool_to_BExp(false)");
    auto plain = parse_os_algebra("algebra P\nsorts a\nop c : -> a\nop f : a -> a\nrule f(c) => c\n");
    auto tp = translate_algebra(plain);
    CHECK(tp.algebra.rules == plain.rules);
    CHECK(tp.algebra.equations.empty());
  }

  TEST_CASE("translated IMP signature") {
    const auto& alg = test::imp_tr().algebra;
    CHECK(alg.signature.sorts().size() == 10);
    CHECK(alg.signature.operators().size() == 21 + 5);
    std::size_t non_core = 0;
    for (std::size_t i = 0; i < alg.signature.operators().size(); ++i) non_core += alg.signature.is_non_core(i);
    CHECK(non_core == 5);
    CHECK(alg.core_equation_count() == 0);
  }

  TEST_CASE("operators sharing a constructor differ in an incompatible position") {
    const auto& tm = test::imp_tr().map;
    const auto& ops = test::imp_tr().algebra.signature.operators();
    const auto& poset = test::imp().signature.poset();
    for (std::size_t i = 0; i < ops.size(); ++i) {
      for (std::size_t j = i + 1; j < ops.size(); ++j) {
        auto a = tm.origin_of(ops[i].constructor);
        auto b = tm.origin_of(ops[j].constructor);
        if (!a || !b || a->constructor != b->constructor || a->arity() != b->arity()) continue;
        bool apart = false;
        for (std::size_t k = 0; k < a->arity(); ++k) {
          apart = apart || !poset.common_supersort_exists(a->arg_sorts[k], b->arg_sorts[k]);
        }
        CHECK_MESSAGE(apart, ops[i].constructor << " vs " << ops[j].constructor);
      }
    }
  }

  TEST_CASE("untranslation") {
    const auto& tm = test::imp_tr().map;
    CHECK(untranslate(tm, ms("-BExp(Cast_bool_to_BExp(true))")) == os("-(true)"));
    CHECK(untranslate(tm, ms("+AExp(Cast_int_to_AExp(Cast_nat_to_int(0)), Cast_Id_to_AExp(v(0)))")) ==
          os("+(0, v(0))"));
    try {
      untranslate(tm, GroundTerm("nope"));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::not_in_image);
    }
  }

  TEST_CASE("an algebra without subsorts is unchanged up to names") {
    auto alg = parse_os_algebra("algebra N\nsorts a b\nop c : -> a\nop d : -> b\nop f : a -> b\neq f(c) = d\n");
    auto tr = translate_algebra(alg);
    CHECK(tr.map.casts.empty());
    CHECK(tr.algebra.equations == alg.equations);
    CHECK(tr.algebra.signature.operators() == alg.signature.operators());
  }
}
