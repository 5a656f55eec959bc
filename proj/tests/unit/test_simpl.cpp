#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sdot/fincat/builtin.hpp"
#include "sdot/simpl/checks.hpp"
#include "sdot/simpl/esd.hpp"
#include "sdot/simpl/json_io.hpp"
#include "sdot/simpl/multi.hpp"
#include "sdot/waldhausen/grid.hpp"
#include "sdot/waldhausen/iterated.hpp"

using namespace sdot;
using namespace sdot::simpl;

namespace {

std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Δ[2] at N = 2 with a second 2-cell on the same boundary.
TruncSimplicialSet doubled_triangle() {
  const auto base = standard_simplex(2, 2);
  TruncSimplicialSet x;
  auto sizes = base.sizes;
  sizes[2] += 1;
  x.allocate(2, sizes);
  for (int n = 1; n <= 2; ++n)
    for (int i = 0; i <= n; ++i)
      for (CellId c = 0; c < base.size(n); ++c) x.d[n][i][c] = base.d[n][i][c];
  for (int n = 0; n < 2; ++n)
    for (int i = 0; i <= n; ++i)
      for (CellId c = 0; c < base.size(n); ++c) x.s[n][i][c] = base.s[n][i][c];
  const CellId top = simplex_cell(2, {0, 1, 2}), extra = static_cast<CellId>(base.size(2));
  for (int i = 0; i <= 2; ++i) x.d[2][i][extra] = base.d[2][i][top];
  return x;
}

bool all_witnesses_verify(const TruncSimplicialSet& x, const CheckReport& r) {
  for (const auto& v : r.verdicts)
    for (const auto& w : v.witnesses)
      if (!verify_witness(x, v, w)) return false;
  return true;
}

}  // namespace

TEST_CASE("standard simplices are simplicial and have binomial counts") {
  for (int k = 0; k <= 4; ++k)
    for (int N = 0; N <= 5; ++N) {
      const auto x = standard_simplex(k, N);
      CHECK(validate_simplicial(x).ok());
      for (int n = 0; n <= N; ++n) CHECK(x.size(n) == binom(n + k + 1, k));
    }
  CHECK(standard_simplex(0, 3).size(3) == 1);
  for (int n = 0; n <= 4; ++n) CHECK(standard_simplex(1, 4).size(n) == static_cast<std::size_t>(n + 2));
  CHECK(standard_simplex(2, 2).size(2) == 10);
}

TEST_CASE("a corrupted face table is named") {
  auto x = standard_simplex(2, 3);
  const CellId c = 5;
  x.d[2][0][c] = x.d[2][0][c] == 0 ? 1 : 0;
  const auto v = validate_simplicial(x);
  REQUIRE_FALSE(v.ok());
  bool names_it = false;
  for (const auto& w : v.violations) {
    CHECK(verify_violation(x, w));
    if ((w.n == 2 || w.n == 3) && (w.cell == c || w.n == 3)) names_it = true;
  }
  CHECK(names_it);
}

TEST_CASE("fiber products") {
  CHECK(fiber_product({0, 0}, {0, 0, 0}).size() == 6);
  CHECK(fiber_product({0, 1}, {2, 3}).empty());
  const auto p = fiber_product({0, 1, 1}, {1, 0});
  CHECK(p.size() == 3);
}

TEST_CASE("nerves are Segal and 2-Segal") {
  for (auto spec : {"vect:2,1", "pointed:3", "zeros:2"}) {
    const auto e = fincat::builtin_from_spec(spec);
    const auto x = nerve(e->category_ptr(), 4);
    CHECK(validate_simplicial(x).ok());
    CHECK(segal_check(x, 4).pass());
    CHECK(two_segal_check(x, 4, Family::all).pass());
    CHECK(pentagon_audit(x).pass());
  }
  CHECK(segal_check(standard_simplex(2, 4), 4).pass());
}

TEST_CASE("nerve of vect(2,2) is Segal") {
  const auto e = fincat::builtin_vect(2, 2);
  const auto x = nerve(e->category_ptr(), 3);
  CHECK(segal_check(x, 3).pass());
}

TEST_CASE("a doubled 2-cell breaks the Segal condition at level 2") {
  const auto x = doubled_triangle();
  CHECK(validate_simplicial(x).ok());
  const auto r = segal_check(x, 2);
  CHECK_FALSE(r.pass());
  bool level2 = false;
  for (const auto& v : r.verdicts)
    if (!v.pass) {
      level2 = level2 || v.n == 2;
      CHECK_FALSE(v.witnesses.empty());
    }
  CHECK(level2);
  CHECK(all_witnesses_verify(x, r));
}

TEST_CASE("subdivision families") {
  for (int n = 3; n <= 6; ++n) {
    const auto all = subdivisions(n, Family::all);
    std::size_t lower = 0, upper = 0, both = 0;
    for (const auto& s : all) {
      CHECK(s.valid());
      lower += s.i == 0;
      upper += s.j == n;
      both += s.i == 0 && s.j == n;
    }
    CHECK(both == 0);
    CHECK(subdivisions(n, Family::lower).size() == lower);
    CHECK(subdivisions(n, Family::upper).size() == upper);
    CHECK(all.size() == static_cast<std::size_t>((n + 1) * (n - 2) / 2));
  }
  const auto up = subdivisions(3, Family::upper);
  REQUIRE(up.size() == 1);
  CHECK(up[0].i == 1);
  CHECK(up[0].j == 3);
  const auto lo = subdivisions(3, Family::lower);
  REQUIRE(lo.size() == 1);
  CHECK(lo[0].i == 0);
  CHECK(lo[0].j == 2);
  CHECK(up[0].pieces() == std::vector<std::vector<int>>{{1, 2, 3}, {0, 1, 3}});
}

TEST_CASE("two_segal all passes iff lower and upper pass") {
  std::vector<TruncSimplicialSet> xs;
  xs.push_back(nerve(fincat::builtin_vect(2, 1)->category_ptr(), 4));
  xs.push_back(waldhausen::s_simplicial(fincat::builtin_vect(2, 1), 4).simplicial);
  xs.push_back(waldhausen::s_simplicial(fincat::builtin_pointed_sets(3), 3).simplicial);
  xs.push_back(waldhausen::seq_complex(fincat::builtin_vect(2, 2), 3).simplicial);
  xs.push_back(standard_simplex(2, 4));
  for (const auto& x : xs) {
    const int N = std::min(x.N, 4);
    const auto all = two_segal_check(x, N, Family::all);
    const auto lo = two_segal_check(x, N, Family::lower);
    const auto up = two_segal_check(x, N, Family::upper);
    CHECK(all.pass() == (lo.pass() && up.pass()));
    CHECK(all.strict_pass() == (lo.strict_pass() && up.strict_pass()));
    CHECK(all_witnesses_verify(x, all));
  }
}

TEST_CASE("strict and groupoid fiber counts for S of vect(2,1)") {
  // with one zero every automorphism group is trivial and the fibers are points
  const auto canon = waldhausen::s_simplicial(fincat::builtin_vect(2, 1), 3, fincat::ZeroPolicy::canonical);
  const auto& x = canon.simplicial;
  const auto r = two_segal_check(x, 3, Family::upper);
  CHECK(r.pass());
  CHECK(r.strict_pass());
  // S_2 x_{S_1} S_2 over the (d_2, d_0) gluing: edge {0,2} of the first against edge {1,2} of the second
  const auto glued = fiber_product(x.restrict_all(2, {0, 2}), x.restrict_all(2, {1, 2}));
  CHECK(glued.size() == x.size(3));
  // with the duplicate zero the strict condition fails but the groupoid one holds
  const auto raw = waldhausen::s_simplicial(fincat::builtin_vect(2, 1), 3);
  const auto rr = two_segal_check(raw.simplicial, 3, Family::all);
  CHECK(rr.pass());
  CHECK_FALSE(rr.strict_pass());
}

TEST_CASE("2-Segal for S of vect(2,2) up to level 3") {
  const auto sc = waldhausen::s_simplicial(fincat::builtin_vect(2, 2), 3);
  const auto r = two_segal_check(sc.simplicial, 3, Family::all);
  CHECK(r.pass());
  CHECK(r.mode == "groupoid");
  CHECK(pentagon_audit(waldhausen::s_simplicial(fincat::builtin_vect(2, 1), 4).simplicial).pass());
}

TEST_CASE("two_segal_check beyond the truncation") {
  CHECK_THROWS_AS(two_segal_check(standard_simplex(1, 3), 4, Family::all), Error);
}

TEST_CASE("edgewise subdivision") {
  for (int k = 0; k <= 2; ++k) {
    const auto x = standard_simplex(k, 5);
    const auto e = edgewise_subdivision(x);
    CHECK(e.N == 2);
    CHECK(validate_simplicial(e).ok());
    CHECK(e.size(0) == x.size(1));
  }
  const auto e1 = edgewise_subdivision(standard_simplex(1, 5));
  for (int k = 0; k <= 2; ++k) CHECK(e1.size(k) == static_cast<std::size_t>(2 * k + 3));
  CHECK_THROWS_AS(edgewise_subdivision(standard_simplex(1, 0)), Error);
  const auto s = waldhausen::s_simplicial(fincat::builtin_vect(2, 1), 5);
  const auto es = edgewise_subdivision(s.simplicial);
  CHECK(validate_simplicial(es).ok());
  CHECK(segal_check(es, es.N).pass());
}

TEST_CASE("multisimplicial axis checks") {
  MultiSimplicialSet c;
  c.bounds = {3, 3};
  c.sizes.assign(16, 1);
  c.allocate();
  for (auto* tabs : {&c.d, &c.s})
    for (auto& t : *tabs)
      for (auto& l : t)
        for (auto& m : l)
          for (auto& v : m) v = 0;
  CHECK(validate_multisimplicial(c).ok());
  for (int axis = 0; axis < 2; ++axis) {
    CHECK(multisimplicial_axis_check(c, axis, "2segal:all").pass());
    CHECK(multisimplicial_axis_check(c, axis, "segal").pass());
  }
  CHECK_THROWS_AS(multisimplicial_axis_check(c, 2, "segal"), Error);
  CHECK_THROWS_AS(multisimplicial_axis_check(c, 0, "bogus"), Error);

  const auto it = waldhausen::s_iterated(fincat::builtin_vect(2, 1), {3, 2}, fincat::ZeroPolicy::canonical);
  CHECK(validate_multisimplicial(it.multi).ok());
  CHECK(multisimplicial_axis_check(it.multi, 0, "2segal:all").pass());
  CHECK(multisimplicial_axis_check(it.multi, 1, "2segal:all").pass());
}

TEST_CASE("json round trip and witness rendering") {
  const auto x = waldhausen::s_simplicial(fincat::builtin_vect(2, 1), 3).simplicial;
  const auto j = simplicial_to_json(x);
  const auto y = simplicial_from_json(j);
  CHECK(y.sizes == x.sizes);
  CHECK(y.d == x.d);
  CHECK(y.s == x.s);
  CHECK(simplicial_to_json(y) == j);
  auto bad = j;
  bad["extra"] = 1;
  CHECK_THROWS_AS(simplicial_from_json(bad), Error);
  const auto r = segal_check(doubled_triangle(), 2);
  const auto d = doubled_triangle();
  const auto rj = report_to_json(r, &d);
  CHECK(rj["pass"] == false);
  CHECK(rj["verdicts"].size() == r.verdicts.size());
}
