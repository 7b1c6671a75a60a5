#include "../support/fixtures.hpp"
#include "doctest.h"
#include "skt/algebra_file.hpp"
#include "skt/bismut.hpp"
#include "skt/catalog.hpp"
#include "skt/errors.hpp"

using skt::Subspace;

namespace {

struct Expected {
  const char* name;
  int dim;
  bool abelian;
  skt::AlternatingForm c;
  int intersection_index;  // 1-based basis vector spanning z ∩ [n,n]^perp, 0 if empty
};

std::vector<Expected> expected() {
  return {
      {"n4_abelian", 4, true, fx::form(4, 3, {{{1, 2, 3}, -1}}), 4},
      {"n6_abelian", 6, true, fx::form(6, 3, {{{1, 2, 5}, -1}, {{1, 4, 5}, 1}, {{2, 3, 5}, -1}, {{3, 4, 5}, -1}}), 6},
      {"n8_nonabelian", 8, false,
       fx::form(8, 3,
                {{{1, 2, 5}, -2}, {{1, 2, 7}, -1}, {{2, 3, 5}, -1}, {{2, 4, 6}, -1}, {{3, 4, 5}, -1}, {{3, 4, 7}, 1}}),
       8},
      {"n6_nonabelian", 6, false,
       fx::form(6, 3, {{{1, 2, 5}, -1}, {{2, 3, 5}, 1}, {{2, 4, 6}, 1}, {{3, 4, 5}, -1}}), 0},
      {"n10_nonabelian", 10, false,
       fx::form(10, 3,
                {{{1, 2, 7}, -1},
                 {{1, 2, 9}, -1},
                 {{1, 3, 7}, 1},
                 {{1, 6, 9}, 1},
                 {{2, 3, 8}, 1},
                 {{2, 5, 9}, -1},
                 {{3, 4, 7}, -1},
                 {{3, 4, 8}, skt::Rational(-5, 2)},
                 {{3, 6, 9}, 1},
                 {{4, 5, 7}, 2},
                 {{4, 5, 9}, -1},
                 {{4, 6, 8}, 2},
                 {{5, 6, 8}, -2},
                 {{5, 6, 9}, -1}}),
       10},
      {"n12_nonabelian", 12, false,
       fx::form(12, 3,
                {{{1, 2, 7}, -1},
                 {{1, 2, 9}, -1},
                 {{1, 2, 11}, -1},
                 {{1, 3, 7}, 1},
                 {{1, 6, 8}, 2},
                 {{2, 3, 8}, 1},
                 {{2, 5, 8}, -2},
                 {{3, 4, 9}, -1},
                 {{3, 4, 10}, -1},
                 {{3, 6, 11}, 1},
                 {{4, 5, 11}, -1},
                 {{5, 6, 9}, -1},
                 {{5, 6, 11}, -3}}),
       12},
  };
}

}  // namespace

TEST_CASE("catalog entries match the printed torsion forms") {
  REQUIRE(skt::catalog::entries().size() == 6);
  for (const auto& e : expected()) {
    CAPTURE(e.name);
    const auto& entry = skt::catalog::get(e.name);
    CHECK(entry.dim == e.dim);
    CHECK(entry.abelian_J == e.abelian);
    CHECK(entry.expected_c == e.c);
    const auto v = skt::is_skt(entry.triple);
    CHECK(v.c == e.c);
    CHECK(v.is_skt);
    CHECK(skt::dc_direct(entry.triple).is_zero());
    CHECK(skt::ce_differential(entry.triple.algebra, v.c).is_zero());
  }
}

TEST_CASE("catalog brackets agree with the hand-built algebras") {
  CHECK(skt::catalog::get("n4_abelian").triple.algebra == fx::n4());
  CHECK(skt::catalog::get("n6_abelian").triple.algebra == fx::n6());
  CHECK(skt::catalog::get("n8_nonabelian").triple.algebra == fx::n8());
  CHECK(skt::catalog::get("n6_nonabelian").triple.algebra == fx::n6_nonabelian());
  // "de^6 = e^{13}" read under the fixed sign rule
  const auto& l = skt::catalog::get("n6_nonabelian").triple.algebra;
  CHECK(l.bracket(skt::unit_vector(6, 0), skt::unit_vector(6, 2)) == fx::vec(6, {{6, -1}}));
}

TEST_CASE("centers and the compose intersection") {
  for (const auto& e : expected()) {
    CAPTURE(e.name);
    const auto& t = skt::catalog::get(e.name).triple;
    const auto z = skt::center(t.algebra);
    const auto d = skt::derived(t.algebra);
    const auto x = skt::intersect(z, skt::orth_complement(d, t.g.matrix()));
    if (e.intersection_index == 0) {
      CHECK(x.is_zero());
    } else if (std::string(e.name) == "n6_abelian") {
      CHECK(x == Subspace::span(6, {{1, 0, 1, 0, 0, 0}, {0, 1, 0, 1, 0, 0}, {0, 0, 0, 0, 0, 1}}));
    } else {
      CHECK(x == Subspace::coordinate(t.dim(), {e.intersection_index - 1}));
    }
    // the last echelon row is the default composition direction
    if (e.intersection_index != 0)
      CHECK(x.basis_vector(x.dim() - 1) == skt::unit_vector(t.dim(), e.intersection_index - 1));
  }
  const auto& n6n = skt::catalog::get("n6_nonabelian").triple.algebra;
  CHECK(skt::center(n6n) == skt::derived(n6n));
  CHECK(skt::center(n6n) == Subspace::coordinate(6, {4, 5}));
}

TEST_CASE("list and lookup") {
  const auto rows = skt::catalog::list();
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows) {
    CHECK(r.step == 2);
    CHECK(r.is_skt);
    CHECK(r.abelian_J == (r.name == "n4_abelian" || r.name == "n6_abelian"));
  }
  try {
    skt::catalog::get("nonexistent");
    FAIL("expected an error");
  } catch (const skt::InputError& e) {
    const std::string msg = e.what();
    for (const auto& n : skt::catalog::names()) CHECK(msg.find(n) != std::string::npos);
  }
  CHECK_NOTHROW(skt::catalog::self_test());
}
