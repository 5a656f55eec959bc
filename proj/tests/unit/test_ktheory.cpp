#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "sdot/fincat/builtin.hpp"
#include "sdot/ktheory/k0.hpp"

using namespace sdot;
using namespace sdot::ktheory;

namespace {

IntMatrix mat(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r ? static_cast<Eigen::Index>(rows.begin()->size()) : 0;
  IntMatrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (auto v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

// cofactor expansion, fine for the tiny sizes used here
std::int64_t minor_det(const IntMatrix& a, const std::vector<Eigen::Index>& rows, const std::vector<Eigen::Index>& cols) {
  if (rows.empty()) return 1;
  std::int64_t sum = 0;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    std::vector<Eigen::Index> r2(rows.begin() + 1, rows.end()), c2;
    for (std::size_t l = 0; l < cols.size(); ++l)
      if (l != j) c2.push_back(cols[l]);
    const auto v = a(rows[0], cols[j]) * minor_det(a, r2, c2);
    sum += j % 2 ? -v : v;
  }
  return sum;
}

std::vector<std::vector<Eigen::Index>> subsets(Eigen::Index n, int k) {
  std::vector<std::vector<Eigen::Index>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::vector<Eigen::Index> s;
    for (Eigen::Index i = 0; i < n; ++i)
      if (mask >> i & 1u) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

// invariant factors from determinantal divisors
std::vector<std::int64_t> invariant_factors(const IntMatrix& a) {
  std::vector<std::int64_t> out;
  std::int64_t prev = 1;
  for (int k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
    std::int64_t g = 0;
    for (const auto& r : subsets(a.rows(), k))
      for (const auto& c : subsets(a.cols(), k)) g = std::gcd(g, minor_det(a, r, c));
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::configuration;
}

// the same structure without its last object
fincat::ExactPtr drop_last(const fincat::ExactPtr& e) {
  std::vector<ObjId> keep(e->category().num_objects() - 1);
  std::iota(keep.begin(), keep.end(), 0);
  const auto sub = fincat::full_subcategory(e->category_ptr(), keep);
  const auto& inc = sub.inclusion;
  std::vector<char> mono, epi, zero;
  for (MorId f = 0; f < sub.category->num_morphisms(); ++f) {
    mono.push_back(e->is_mono(inc.on_morphisms[f]));
    epi.push_back(e->is_epi(inc.on_morphisms[f]));
  }
  for (ObjId a : keep) zero.push_back(e->is_zero(a));
  auto out = std::make_shared<fincat::ProtoExactStructure>(sub.category, mono, epi, zero, e->name() + " minus one");
  out->use_native([e, inc](const fincat::Square& s) {
    return e->bicartesian_unchecked(fincat::make_square(e->category(), inc.on_morphisms[s.top], inc.on_morphisms[s.left],
                                                        inc.on_morphisms[s.right], inc.on_morphisms[s.bottom]));
  });
  return out;
}

bool has_row(const IntMatrix& m, const std::vector<std::pair<Eigen::Index, std::int64_t>>& entries) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Eigen::VectorX<std::int64_t> want = Eigen::VectorX<std::int64_t>::Zero(m.cols());
    for (auto [c, v] : entries) want(c) += v;
    if (m.row(r).transpose() == want) return true;
  }
  return false;
}

// v lies in the row lattice iff appending it keeps the invariant factors
bool in_row_lattice(const IntMatrix& m, const Eigen::VectorX<std::int64_t>& v) {
  IntMatrix m2(m.rows() + 1, m.cols());
  m2.topRows(m.rows()) = m;
  m2.row(m.rows()) = v.transpose();
  return smith_normal_form(m).diagonal == smith_normal_form(m2).diagonal;
}

}  // namespace

TEST_CASE("smith normal form examples") {
  const IntMatrix a = mat({{2, 0}, {0, 3}});
  const auto f = smith_normal_form(a);
  CHECK(f.diagonal == std::vector<std::int64_t>{1, 6});
  CHECK(f.verify(a));

  const IntMatrix id = IntMatrix::Identity(4, 4);
  CHECK(smith_normal_form(id).diagonal == std::vector<std::int64_t>(4, 1));

  const IntMatrix z = IntMatrix::Zero(3, 2);
  const auto fz = smith_normal_form(z);
  CHECK(fz.diagonal.empty());
  CHECK(fz.verify(z));

  const IntMatrix empty(0, 3);
  CHECK(smith_normal_form(empty).diagonal.empty());

  const IntMatrix b = mat({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  CHECK(smith_normal_form(b).diagonal == std::vector<std::int64_t>{2, 6, 12});
  CHECK(smith_normal_form(b).diagonal == invariant_factors(b));
}

TEST_CASE("smith normal form against determinantal divisors") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dim(1, 4), entry(-6, 6), sparse(0, 2);
  for (int trial = 0; trial < 300; ++trial) {
    IntMatrix a(dim(rng), dim(rng));
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = sparse(rng) ? entry(rng) : 0;
    const auto f = smith_normal_form(a);
    CHECK(f.verify(a));
    CHECK(f.diagonal == invariant_factors(a));
    for (std::size_t i = 1; i < f.diagonal.size(); ++i) CHECK(f.diagonal[i] % f.diagonal[i - 1] == 0);
  }
}

TEST_CASE("verify rejects a wrong certificate") {
  const IntMatrix a = mat({{2, 0}, {0, 3}});
  auto f = smith_normal_form(a);
  f.D(1, 1) = 5;
  CHECK_FALSE(f.verify(a));
  f = smith_normal_form(a);
  f.U(0, 0) *= 2;
  CHECK_FALSE(f.verify(a));
}

TEST_CASE("overflow is a scale error") {
  const std::int64_t big = std::int64_t{1} << 62;
  const IntMatrix a = mat({{big, big - 1}, {big - 3, -big}});
  CHECK(code_of([&] { smith_normal_form(a); }) == ErrorCode::scale);
}

TEST_CASE("k0 of vector spaces up to dimension 3") {
  const auto e = fincat::builtin_vect(2, 3);
  const auto r = k0(e);
  const auto& p = r.presentation;
  CHECK(p.generators.size() == 4);
  CHECK(p.well_formed());
  CHECK(r.certificate_ok);
  CHECK(r.group.rank == 1);
  CHECK(r.group.torsion.empty());

  std::vector<Eigen::Index> by_dim(4);
  for (ObjId a = 0; a < e->category().num_objects(); ++a) by_dim[fincat::vect_dimension(*e, a)] = p.class_of[a];
  CHECK(has_row(p.relations, {{by_dim[2], 1}, {by_dim[1], -2}}));
  CHECK(has_row(p.relations, {{by_dim[3], 1}, {by_dim[1], -1}, {by_dim[2], -1}}));

  // dimension is additive, so it kills every relation
  Eigen::VectorX<std::int64_t> dims(4);
  for (int d = 0; d <= 3; ++d) dims(by_dim[d]) = d;
  CHECK((p.relations * dims).isZero());

  // every sum splits
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b) {
      Eigen::VectorX<std::int64_t> v = Eigen::VectorX<std::int64_t>::Zero(4);
      v(by_dim[a + b]) += 1;
      v(by_dim[a]) -= 1;
      v(by_dim[b]) -= 1;
      CHECK(in_row_lattice(p.relations, v));
    }
}

TEST_CASE("k0 of pointed sets") {
  const auto e = fincat::builtin_pointed_sets(3);
  const auto r = k0(e);
  const auto& p = r.presentation;
  CHECK(p.generators.size() == 3);
  CHECK(p.well_formed());
  CHECK(r.certificate_ok);
  CHECK(r.group.rank == 1);
  CHECK(r.group.torsion.empty());
  // object n-1 has n elements
  CHECK(has_row(p.relations, {{p.class_of[2], 1}, {p.class_of[1], -2}}));
  Eigen::VectorX<std::int64_t> reduced(3);
  for (ObjId a = 0; a < 3; ++a) reduced(p.class_of[a]) = a;
  CHECK((p.relations * reduced).isZero());
}

TEST_CASE("k0 of zero objects only") {
  for (int count : {1, 3}) {
    const auto r = k0(fincat::builtin_zeros(count));
    CHECK(r.presentation.generators.size() == 1);
    CHECK(r.presentation.zero_classes == 1);
    CHECK(r.presentation.well_formed());
    CHECK(r.certificate_ok);
    CHECK(r.group.trivial());
  }
}

TEST_CASE("a duplicate zero does not change k0") {
  for (int d : {1, 2, 3}) {
    const auto with = fincat::builtin_vect(2, d);
    const auto without = drop_last(with);
    REQUIRE(without->zeros().size() + 1 == with->zeros().size());
    const auto a = k0(with), b = k0(without);
    CHECK(a.group == b.group);
    CHECK(a.presentation.generators.size() == b.presentation.generators.size());
    CHECK(a.presentation.s2_cells > b.presentation.s2_cells);
  }
}

TEST_CASE("deduplicating relations keeps the cokernel") {
  for (const char* spec : {"vect:2,1", "vect:2,2", "pointed:3", "zeros:2"}) {
    const auto e = fincat::builtin_from_spec(spec);
    const auto cls = k0(e), cell = k0(e, true);
    CHECK(cls.group == cell.group);
    CHECK(cell.presentation.relations.rows() >= cls.presentation.relations.rows());
    CHECK(cell.presentation.s2_cells == cls.presentation.s2_cells);
    CHECK(cell.certificate_ok);
  }
  // thousands of rows: the unimodular certificate is too big to re-multiply here
  const auto e = fincat::builtin_vect(2, 3);
  const auto p = k0_presentation(e, true);
  CHECK(p.relations.rows() > 1000);
  const auto f = smith_normal_form(p.relations);
  CHECK(cokernel(f, p.relations.cols()) == k0(e).group);
}

TEST_CASE("k0 json") {
  const auto r = k0(fincat::builtin_vect(2, 2));
  const auto j = k0_to_json(r);
  CHECK(j["rank"] == 1);
  CHECK(j["torsion"].empty());
  CHECK(j["generators"].size() == 3);
  CHECK(j["relations"].size() == static_cast<std::size_t>(r.presentation.relations.rows()));
  CHECK(j["certificate_ok"] == true);
}
