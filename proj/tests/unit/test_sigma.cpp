#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <set>

#include "sdot/fincat/builtin.hpp"
#include "sdot/sigma/conditions.hpp"
#include "sdot/sigma/construction.hpp"
#include "sdot/sigma/control.hpp"
#include "sdot/sigma/exact_nerve.hpp"
#include "sdot/sigma/json_io.hpp"
#include "sdot/sigma/probe.hpp"
#include "sdot/simpl/checks.hpp"
#include "sdot/waldhausen/grid.hpp"
#include "sdot/waldhausen/iterated.hpp"

using namespace sdot;
using namespace sdot::sigma;
using fincat::ZeroPolicy;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::configuration;
}

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::uint64_t out = 1;
  for (int i = 1; i <= r; ++i) out = out * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  return out;
}

SigmaPtr share(SigmaSet x) { return std::make_shared<const SigmaSet>(std::move(x)); }

}  // namespace

TEST_CASE("p degree") {
  CHECK(p_degree({0, 0}) == 1);
  CHECK(p_degree({-1, -1}) == 0);
  CHECK(p_degree({2, 3}) == 6);
}

TEST_CASE("path space of simplices and nerves") {
  SUBCASE("P of the point") {
    const SigmaSet p = path_space(simpl::standard_simplex(0, 4));
    CHECK(validate_sigma(p).ok());
    CHECK(p.aug_size == 1);
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; a + 1 + b <= 4; ++b) CHECK(p.size(a, b) == 1);
  }
  SUBCASE("P of the 1-simplex") {
    const auto y = simpl::standard_simplex(1, 3);
    const SigmaSet p = path_space(y);
    CHECK(validate_sigma(p).ok());
    CHECK(p.size(0, 0) == 3);
    // nerve of [1]: two vertices
    CHECK(p.aug_size == 2);
    // augmentation is the degeneracy Y0 -> Y1
    for (CellId z = 0; z < p.aug_size; ++z) CHECK(p.aug[z] == y.degeneracy(0, 0, z));
  }
  SUBCASE("every small simplex") {
    for (int k = 0; k <= 3; ++k) {
      const auto y = simpl::standard_simplex(k, 4);
      const SigmaSet p = path_space(y);
      CHECK(validate_sigma(p).ok());
      for (CellId z = 0; z < p.aug_size; ++z) CHECK(p.aug[z] == y.degeneracy(0, 0, z));
      for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + 1 + b <= 4; ++b) CHECK(p.size(a, b) == y.size(a + 1 + b));
    }
  }
  SUBCASE("corrupted table") {
    SigmaSet p = path_space(simpl::standard_simplex(2, 3));
    p.d[0][SigmaSet::index(1, 0)][0][0] = p.d[0][SigmaSet::index(1, 0)][0][0] == 0 ? 1 : 0;
    CHECK_FALSE(validate_sigma(p).ok());
  }
}

TEST_CASE("representable probes") {
  const auto p0 = p_delta(0);
  CHECK(p0->set.aug_size == 1);
  CHECK(p0->generators.size() == 1);
  CHECK(p0->generators[0].obj.augmentation());

  const auto p1 = p_delta(1);
  std::size_t nondeg00 = 0;
  for (const auto& g : p1->generators)
    if (g.obj == SigmaObj{0, 0}) ++nondeg00;
  CHECK(nondeg00 == 1);

  // injective vertex sequences at [a,b] number C(k+1, a+b+2)
  for (int k = 0; k <= 3; ++k) {
    const auto p = p_delta(k);
    CHECK(validate_sigma(p->set).ok());
    CHECK(p->set.aug_size == static_cast<std::size_t>(k + 1));
    for (int a = 0; a <= k; ++a)
      for (int b = 0; a + 1 + b <= p->set.N; ++b) {
        std::uint64_t injective = 0;
        for (CellId c = 0; c < p->set.size(a, b); ++c) {
          const auto v = p->vertices({a, b}, c)[0];
          if (std::set<int>(v.begin(), v.end()).size() == v.size()) ++injective;
        }
        CHECK(injective == binomial(k + 1, a + b + 2));
      }
  }
  const auto p3 = p_delta(3);
  std::uint64_t inj01 = 0;
  for (CellId c = 0; c < p3->set.size(0, 1); ++c) {
    const auto v = p3->vertices({0, 1}, c)[0];
    if (std::set<int>(v.begin(), v.end()).size() == 3) ++inj01;
  }
  CHECK(inj01 == 4);
}

TEST_CASE("iterated probes and the product identification") {
  const auto one = p_iterated_delta({2});
  const auto plain = p_delta(2);
  CHECK(one->set.aug_size == plain->set.aug_size);
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; a + 1 + b <= 3; ++b) CHECK(one->set.size(a, b) == plain->set.size(a, b));

  const auto p11 = p_iterated_delta({1, 1});
  CHECK(p11->set.size(0, 0) == 9);
  CHECK(validate_sigma(p11->set).ok());
  for (int k1 = 0; k1 <= 2; ++k1)
    for (int k2 = 0; k2 <= 2; ++k2)
      CHECK(p_iterated_delta({k1, k2}, 2)->set.aug_size == static_cast<std::size_t>((k1 + 1) * (k2 + 1)));

  for (const auto& ks : std::vector<std::vector<int>>{{0, 0}, {1, 1}, {2, 1}, {1, 1, 1}}) {
    const auto rep = product_iso_check(ks);
    CHECK_MESSAGE(rep.pass(), ks.size());
    CHECK(rep.objects_checked > 0);
  }
}

TEST_CASE("mapping spaces") {
  const auto v22 = fincat::builtin_vect(2, 2);
  const auto nv = exact_nerve(v22, 3);

  SUBCASE("maps out of the point probe are augmentation cells") {
    MappingSpace ms(p_delta(0), nv->set);
    REQUIRE(ms.size() == nv->set->aug_size);
    std::set<CellId> seen;
    for (std::size_t m = 0; m < ms.size(); ++m) {
      REQUIRE(ms.images(m).size() == 1);
      seen.insert(ms.images(m)[0]);
    }
    CHECK(seen.size() == nv->set->aug_size);
    CHECK(ms.consistency().ok());
  }
  SUBCASE("maps into the terminal set") {
    const auto t = share(terminal_sigma(4));
    for (int k = 0; k <= 3; ++k) CHECK(MappingSpace(p_delta(k), t).size() == 1);
    CHECK(MappingSpace(p_iterated_delta({1, 1}), t).size() == 1);
  }
  SUBCASE("Map(P delta 2, exact nerve) against exact functors on Ar[2]") {
    MappingSpace ms(p_delta(2), nv->set);
    CHECK(ms.size() == waldhausen::s_disc(v22, 2, ZeroPolicy::canonical)->size());
    CHECK(ms.consistency().ok());
  }
  SUBCASE("target too short") {
    CHECK(code_of([&] { MappingSpace(p_delta(3), nv->set); }) == ErrorCode::truncation);
  }
}

TEST_CASE("exact nerve cells") {
  const auto v21 = fincat::builtin_vect(2, 1);
  const auto& c = v21->category();
  const auto nv = exact_nerve(v21, 3, ZeroPolicy::all);
  CHECK(validate_sigma(*nv->set).ok());
  CHECK(nv->set->aug_size == v21->zeros().size());
  CHECK(nv->set->size(0, 0) == c.num_objects());
  std::size_t monos = 0, epis = 0;
  for (MorId f = 0; f < c.num_morphisms(); ++f) {
    monos += v21->is_mono(f);
    epis += v21->is_epi(f);
  }
  CHECK(nv->set->size(0, 1) == monos);
  CHECK(nv->set->size(1, 0) == epis);

  // brute force over all boundaries
  std::size_t squares = 0;
  for (MorId top = 0; top < c.num_morphisms(); ++top) {
    if (!v21->is_mono(top)) continue;
    for (MorId left = 0; left < c.num_morphisms(); ++left) {
      if (!v21->is_epi(left) || c.source(left) != c.source(top)) continue;
      for (MorId right = 0; right < c.num_morphisms(); ++right) {
        if (!v21->is_epi(right) || c.source(right) != c.target(top)) continue;
        for (MorId bottom = 0; bottom < c.num_morphisms(); ++bottom) {
          if (!v21->is_mono(bottom) || c.source(bottom) != c.target(left) || c.target(bottom) != c.target(right))
            continue;
          const auto s = fincat::make_square(c, top, left, right, bottom);
          if (fincat::commutes(c, s) && fincat::is_bicartesian(*v21, s)) ++squares;
        }
      }
    }
  }
  CHECK(nv->set->size(1, 1) == squares);

  const auto canon = exact_nerve(v21, 3);
  CHECK(canon->set->aug_size == 1);
  CHECK(canon->set->size(0, 0) == c.num_objects() - (v21->zeros().size() - 1));
}

TEST_CASE("S-construction of Sigma-sets") {
  SUBCASE("terminal") {
    const auto sc = s_construction_sigma(share(terminal_sigma(4)), 3);
    for (int k = 0; k <= 3; ++k) CHECK(sc.simplicial.size(k) == 1);
    CHECK(simpl::validate_simplicial(sc.simplicial).ok());
  }
  SUBCASE("bridge to the grid construction") {
    for (const char* spec : {"vect:2,1", "pointed:2"}) {
      const auto e = fincat::builtin_from_spec(spec);
      const auto nv = exact_nerve(e, 4);
      const auto sc = s_construction_sigma(nv->set, 3);
      CHECK(simpl::validate_simplicial(sc.simplicial).ok());
      const auto grids = waldhausen::s_simplicial(e, 3, ZeroPolicy::canonical);
      const auto br = sigma_bridge(*nv, sc, grids);
      CHECK_MESSAGE(br.ok(), spec);
      CHECK(br.natural);
      REQUIRE(br.levels.size() == 4);
      for (int k = 0; k <= 3; ++k) {
        CHECK(sc.simplicial.size(k) == grids.simplicial.size(k));
        CHECK(br.levels[k].maps == br.levels[k].grids);
      }
    }
  }
  SUBCASE("truncation") {
    const auto nv = exact_nerve(fincat::builtin_vect(2, 1), 3);
    CHECK(code_of([&] { s_construction_sigma(nv->set, 3); }) == ErrorCode::truncation);
  }
}

TEST_CASE("iterated S-construction of Sigma-sets") {
  const auto v21 = fincat::builtin_vect(2, 1);
  const auto nv = exact_nerve(v21, 5);
  const auto zero = s_iterated_sigma(nv->set, {0, 0});
  CHECK(zero.multi.size({0, 0}) == nv->set->aug_size);

  const auto single = s_iterated_sigma(nv->set, {2});
  const auto sc = s_construction_sigma(nv->set, 2);
  for (int k = 0; k <= 2; ++k) CHECK(single.multi.size({k}) == sc.simplicial.size(k));

  for (const auto& bounds : std::vector<std::vector<int>>{{1, 1}, {2, 1}}) {
    const auto si = s_iterated_sigma(nv->set, bounds);
    CHECK(simpl::validate_multisimplicial(si.multi).ok());
    const auto grids = waldhausen::s_iterated(v21, bounds, ZeroPolicy::canonical, fincat::MultiConvention::diagonal);
    CHECK(si.multi.sizes == grids.multi.sizes);
    CHECK(sigma_bridge(*nv, si, grids).ok());

    // P delta 0 is terminal, so a zero in one axis leaves S of the other
    for (int k = 0; k <= bounds[0]; ++k) CHECK(si.multi.size({k, 0}) == sc.simplicial.size(k));
    const auto classical = waldhausen::s_iterated(v21, bounds, ZeroPolicy::canonical);
    CHECK(classical.multi.size({1, 0}) == 1);
    CHECK(si.multi.size({1, 0}) == 2);
  }
}

TEST_CASE("pointedness") {
  const auto nv = exact_nerve(fincat::builtin_vect(2, 2), 3);
  CHECK(check_pointedness(*nv->set).pass());
  CHECK(check_pointedness(terminal_sigma(3)).pass());

  SigmaSet empty = path_space(simpl::standard_simplex(1, 3));
  empty.aug_size = 0;
  empty.aug.clear();
  const auto rep = check_pointedness(empty);
  CHECK_FALSE(rep.pass());
  CHECK_FALSE(rep.clause("horizontal").witnesses.empty());

  CHECK(code_of([] { check_pointedness(terminal_sigma(1)); }) == ErrorCode::truncation);
}

TEST_CASE("stability") {
  const auto nv = exact_nerve(fincat::builtin_vect(2, 2), 3);
  const auto full = check_stability(*nv, Stability::full);
  CHECK(full.pass());
  CHECK(full.mode == "groupoid");
  CHECK(full.clauses.size() == 2);
  CHECK(check_stability(*nv, Stability::semi).clauses.size() == 1);

  // set-level fibers are torsors under the automorphisms of the free corner
  std::uint64_t gl2 = 0;
  for (int m = 0; m < 16; ++m) gl2 += (((m >> 3) & 1) * ((m >> 0) & 1) + ((m >> 2) & 1) * ((m >> 1) & 1)) % 2;
  const auto strict = check_stability(*nv->set, Stability::full);
  CHECK_FALSE(strict.pass());
  REQUIRE_FALSE(strict.clause("span").witnesses.empty());
  CHECK(strict.clause("span").witnesses[0].rfind(std::to_string(gl2) + " preimages", 0) == 0);

  const auto v21 = exact_nerve(fincat::builtin_vect(2, 1), 3);
  CHECK(check_stability(*v21->set, Stability::full).pass());
  CHECK(check_stability(*v21, Stability::full).pass());
  CHECK(check_stability(*exact_nerve(fincat::builtin_pointed_sets(3), 3), Stability::full).pass());
  CHECK(check_stability(terminal_sigma(3), Stability::full).pass());
  CHECK(parse_stability("semi") == Stability::semi);
  CHECK(code_of([] { parse_stability("half"); }) == ErrorCode::configuration);
  CHECK(code_of([] { check_stability(terminal_sigma(2), Stability::semi); }) == ErrorCode::truncation);
}

TEST_CASE("semi-stable control fixture") {
  const auto fx = load_semi_stable_control();
  CHECK(fx.ok());
  CHECK(fx.mismatches.empty());
  const auto& o = fx.outcome;
  CHECK(o.pointed);
  CHECK(o.stability_semi.pass());
  CHECK_FALSE(o.stability_full.pass());
  CHECK(o.stability_full.clause("span").pass);
  CHECK_FALSE(o.stability_full.clause("cospan").witnesses.empty());
  CHECK(o.lower_through >= 4);
  CHECK(o.upper_fails_at > 0);
  CHECK(o.upper_fails_at <= 4);
  CHECK(o.upper_witness_verifies);

  const auto missing = (std::filesystem::temp_directory_path() / "sdot-no-such-control.json").string();
  CHECK(code_of([&] { load_semi_stable_control(missing); }) == ErrorCode::fixture_missing);
}

TEST_CASE("control search is reproducible") {
  const auto a = search_semi_stable_control(1);
  const auto b = search_semi_stable_control(1);
  CHECK(a.outcome.accepted());
  CHECK(a.squares == b.squares);
  CHECK(control_to_json(a) == control_to_json(b));
}

TEST_CASE("stable input gives 2-Segal, semi-stable input gives lower 2-Segal") {
  struct Fixture {
    std::string name;
    SigmaPtr x;
  };
  std::vector<Fixture> fixtures;
  fixtures.push_back({"vect:2,1", exact_nerve(fincat::builtin_vect(2, 1), 5)->set});
  fixtures.push_back({"pointed:2", exact_nerve(fincat::builtin_pointed_sets(2), 5)->set});
  fixtures.push_back({"zeros:2", exact_nerve(fincat::builtin_zeros(2), 5)->set});
  fixtures.push_back({"terminal", share(terminal_sigma(5))});
  fixtures.push_back({"control", semi_stable_negative_control()->set});

  int stable = 0, semi_only = 0;
  for (const auto& f : fixtures) {
    CAPTURE(f.name);
    REQUIRE(validate_sigma(*f.x).ok());
    const bool pointed = check_pointedness(*f.x).pass();
    const bool full = check_stability(*f.x, Stability::full).pass();
    const bool semi = check_stability(*f.x, Stability::semi).pass();
    const auto sc = s_construction_sigma(f.x, 4);
    if (pointed && full) {
      ++stable;
      CHECK(simpl::two_segal_check(sc.simplicial, 4, simpl::Family::all).strict_pass());
    } else if (pointed && semi) {
      ++semi_only;
      CHECK(simpl::two_segal_check(sc.simplicial, 4, simpl::Family::lower).strict_pass());
    }
  }
  CHECK(stable == 4);
  CHECK(semi_only == 1);
}

TEST_CASE("Sigma-set json") {
  const auto nv = exact_nerve(fincat::builtin_vect(2, 1), 3);
  const auto j = sigma_to_json(*nv->set);
  const SigmaSet back = sigma_from_json(j);
  CHECK(validate_sigma(back).ok());
  CHECK(sigma_to_json(back) == j);
  CHECK(back.sizes == nv->set->sizes);

  auto bad = j;
  bad["extra"] = 1;
  CHECK(code_of([&] { sigma_from_json(bad); }) == ErrorCode::parse);
  CHECK(probe_to_json(*p_delta(2)).is_object());
}
