#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "sdot/fincat/builtin.hpp"
#include "sdot/fincat/diagram.hpp"
#include "sdot/fincat/groupoid.hpp"
#include "sdot/fincat/json_io.hpp"

using namespace sdot;
using namespace sdot::fincat;

namespace {

MorId mor(const ProtoExactStructure& e, const std::string& label) {
  const auto f = e.category().find_morphism(label);
  REQUIRE_MESSAGE(f.has_value(), label);
  return *f;
}

ObjId obj(const ProtoExactStructure& e, const std::string& label) {
  const auto a = e.category().find_object(label);
  REQUIRE_MESSAGE(a.has_value(), label);
  return *a;
}

// the unique morphism a -> b
MorId unique(const ProtoExactStructure& e, ObjId a, ObjId b) {
  REQUIRE(e.category().hom_size(a, b) == 1);
  return e.category().hom_begin(a, b);
}

// rank of an r x c matrix over F2 given by rows of bits
int rank_f2(std::vector<unsigned> rows) {
  int r = 0;
  for (unsigned bit = 0; bit < 8; ++bit) {
    std::size_t p = r;
    while (p < rows.size() && !(rows[p] >> bit & 1u)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != static_cast<std::size_t>(r) && (rows[i] >> bit & 1u)) rows[i] ^= rows[r];
    ++r;
  }
  return r;
}

ExactPtr one_object() {
  FinCategory::Builder b;
  const auto a = b.add_object("*");
  const auto id = b.add_morphism(a, a, "id");
  b.set_identity(a, id);
  b.set_composite(id, id, id);
  auto c = std::make_shared<const FinCategory>(std::move(b).build());
  return std::make_shared<ProtoExactStructure>(c, std::vector<char>{1}, std::vector<char>{1}, std::vector<char>{1}, "pt");
}

}  // namespace

TEST_CASE("terminal category is valid") {
  const auto e = one_object();
  CHECK(validate_category(e->category()).ok());
  CHECK(validate_exact(*e).ok());
  CHECK(iso_classes(e->category()).size() == 1);
}

TEST_CASE("a hole in the composition table is reported with the pair") {
  FinCategory::Builder b;
  const auto a = b.add_object("a"), c = b.add_object("b");
  const auto ia = b.add_morphism(a, a, "ia"), ic = b.add_morphism(c, c, "ib"), f = b.add_morphism(a, c, "f");
  b.set_identity(a, ia);
  b.set_identity(c, ic);
  b.set_composite(ia, ia, ia);
  b.set_composite(ic, ic, ic);
  b.set_composite(f, ia, f);  // f∘ia, while ib∘f is missing
  const auto cat = std::move(b).build();
  const auto v = validate_category(cat);
  REQUIRE_FALSE(v.ok());
  bool named = false;
  for (const auto& x : v.violations)
    if (std::set<std::uint32_t>(x.ids.begin(), x.ids.end()) == std::set<std::uint32_t>{*cat.find_morphism("f"), *cat.find_morphism("ib")})
      named = true;
  CHECK(named);
}

TEST_CASE("builtin vect is a valid exact category") {
  for (auto [q, d] : {std::pair{2, 1}, {2, 2}, {3, 2}}) {
    const auto e = builtin_vect(q, d);
    CHECK(validate_category(e->category()).ok());
    CHECK(validate_exact(*e).ok());
  }
}

TEST_CASE("vect morphism counts match matrix shapes") {
  for (auto [q, d] : {std::pair{2, 1}, {2, 2}, {3, 2}, {2, 3}}) {
    const auto e = builtin_vect(q, d);
    const auto& c = e->category();
    std::uint64_t expected = 0;
    for (ObjId a = 0; a < c.num_objects(); ++a)
      for (ObjId b = 0; b < c.num_objects(); ++b) {
        const auto n = static_cast<std::uint64_t>(std::llround(std::pow(q, vect_dimension(*e, a) * vect_dimension(*e, b))));
        CHECK(c.hom_size(a, b) == n);
        expected += n;
      }
    CHECK(c.num_morphisms() == expected);
  }
  const auto e = builtin_vect(2, 1);
  CHECK(e->category().num_objects() == 3);
  CHECK(e->category().num_morphisms() == 10);
  const auto f1 = obj(*e, "F2^1");
  CHECK(e->category().hom_size(f1, f1) == 2);
}

TEST_CASE("monos F2 -> F2^2 are the nonzero columns") {
  const auto e = builtin_vect(2, 2);
  const auto& c = e->category();
  const auto a = obj(*e, "F2^1"), b = obj(*e, "F2^2");
  int monos = 0;
  for (MorId f = c.hom_begin(a, b); f < c.hom_begin(a, b) + c.hom_size(a, b); ++f) monos += e->is_mono(f);
  int nonzero = 0;
  for (unsigned v = 0; v < 4; ++v) nonzero += v != 0;
  CHECK(monos == nonzero);
  CHECK(monos == 3);
}

TEST_CASE("mono and epi classes agree with ranks") {
  const auto e = builtin_vect(2, 2);
  const auto& c = e->category();
  for (MorId f = 0; f < c.num_morphisms(); ++f) {
    const int m = vect_dimension(*e, c.target(f)), n = vect_dimension(*e, c.source(f));
    const std::string& l = c.morphism_label(f);
    std::vector<unsigned> rows;
    const auto open = l.find('[');
    std::string body = l.substr(open + 1, l.size() - open - 2);
    for (std::size_t at = 0; m > 0 && at <= body.size();) {
      const auto semi = body.find(';', at);
      const std::string row = body.substr(at, semi == std::string::npos ? std::string::npos : semi - at);
      unsigned bits = 0;
      for (std::size_t k = 0; k < row.size(); ++k) bits |= static_cast<unsigned>(row[k] - '0') << k;
      rows.push_back(bits);
      if (semi == std::string::npos) break;
      at = semi + 1;
    }
    const int r = rank_f2(rows);
    CHECK(e->is_mono(f) == (r == n));
    CHECK(e->is_epi(f) == (r == m));
  }
}

TEST_CASE("iso classes of builtins") {
  CHECK(iso_classes(builtin_vect(2, 3)->category()).size() == 4);
  CHECK(iso_classes(builtin_pointed_sets(3)->category()).size() == 3);
  const auto e = builtin_vect(2, 2);
  const auto cls = iso_classes(e->category());
  CHECK(cls.class_of[obj(*e, "0")] == cls.class_of[obj(*e, "0'")]);
  for (auto rep : cls.representatives) CHECK(cls.class_of[rep] == cls.class_of[cls.representatives[cls.class_of[rep]]]);
}

TEST_CASE("core of vect(2,2) counts invertible matrices") {
  const auto e = builtin_vect(2, 2);
  const auto k = core(e->category_ptr());
  CHECK(is_groupoid(*k.category));
  CHECK(validate_category(*k.category).ok());
  int gl2 = 0;
  for (unsigned m = 0; m < 16; ++m) gl2 += ((m & 1) & (m >> 3 & 1)) ^ ((m >> 1 & 1) & (m >> 2 & 1));
  const auto f1 = obj(*e, "F2^1"), f2 = obj(*e, "F2^2");
  CHECK(gl2 == 6);
  CHECK(k.category->hom_size(f2, f2) == static_cast<std::uint32_t>(gl2));
  CHECK(k.category->hom_size(f1, f1) == 1);
  const auto kk = core(k.category);
  CHECK(kk.category->num_morphisms() == k.category->num_morphisms());
}

TEST_CASE("core of a poset is discrete") {
  FinCategory::Builder b;
  const auto x = b.add_object("x"), y = b.add_object("y");
  const auto ix = b.add_morphism(x, x, "ix"), iy = b.add_morphism(y, y, "iy"), f = b.add_morphism(x, y, "f");
  b.set_identity(x, ix);
  b.set_identity(y, iy);
  b.set_composite(ix, ix, ix);
  b.set_composite(iy, iy, iy);
  b.set_composite(f, ix, f);
  b.set_composite(iy, f, f);
  const auto k = core(std::make_shared<const FinCategory>(std::move(b).build()));
  CHECK(k.category->num_morphisms() == 2);
}

TEST_CASE("pointed sets") {
  const auto one = builtin_pointed_sets(1);
  CHECK(one->category().num_objects() == 1);
  CHECK(one->category().num_morphisms() == 1);
  const auto e = builtin_pointed_sets(3);
  CHECK(validate_category(e->category()).ok());
  CHECK(validate_exact(*e).ok());
  const auto& c = e->category();
  CHECK(c.hom_size(1, 1) == 2);
  // pointed maps {*,1,2} -> {*,1}, surjective, each non-basepoint fiber a singleton
  int oracle = 0;
  for (int f1 = 0; f1 < 2; ++f1)
    for (int f2 = 0; f2 < 2; ++f2) {
      const int hits = (f1 == 1) + (f2 == 1);
      if (hits == 1) ++oracle;
    }
  int epis = 0;
  for (MorId f = c.hom_begin(2, 1); f < c.hom_begin(2, 1) + c.hom_size(2, 1); ++f) epis += e->is_epi(f);
  CHECK(epis == oracle);
  CHECK(oracle == 2);
}

TEST_CASE("zero square is bicartesian") {
  const auto e = builtin_vect(2, 2);
  const auto z = obj(*e, "0");
  const auto id = e->category().identity(z);
  CHECK(is_bicartesian(*e, make_square(e->category(), id, id, id, id)));
}

TEST_CASE("direct sum square is bicartesian, a sum-map square is not") {
  const auto e = builtin_vect(2, 2);
  const auto& c = e->category();
  const auto z = obj(*e, "0"), f1 = obj(*e, "F2^1"), f2 = obj(*e, "F2^2");
  // F2 --e1--> F2^2 --pr2--> F2 over 0
  const auto sq = make_square(c, mor(*e, "F2^1->F2^2:[1;0]"), unique(*e, f1, z), mor(*e, "F2^2->F2^1:[01]"),
                              unique(*e, z, f1));
  CHECK(is_bicartesian(*e, sq));
  // 0 -> F2^2 --sum--> F2 over 0 -> F2: the pushout of the span is F2^2, not F2
  const auto bad = make_square(c, unique(*e, z, f2), c.identity(z), mor(*e, "F2^2->F2^1:[11]"), unique(*e, z, f1));
  CHECK(commutes(c, bad));
  CHECK_FALSE(is_bicartesian(*e, bad));
  CHECK_FALSE(is_pushout(c, bad));
  // wrong classes
  const auto noncommuting = make_square(c, mor(*e, "F2^1->F2^2:[1;0]"), unique(*e, f1, z), mor(*e, "F2^2->F2^1:[11]"),
                                        unique(*e, z, f1));
  CHECK_THROWS_AS(is_bicartesian(*e, noncommuting), Error);
}

TEST_CASE("pushout completions") {
  {
    const auto e = builtin_vect(2, 2);
    const auto z = obj(*e, "0"), a = obj(*e, "F2^2");
    const auto s = complete_span_to_pushout(*e, unique(*e, z, a), e->category().identity(z));
    CHECK(vect_dimension(*e, s.br) == 2);
  }
  {
    const auto e = builtin_vect(2, 3);
    const auto s = complete_span_to_pushout(*e, mor(*e, "F2^2->F2^3:[10;01;00]"), mor(*e, "F2^2->F2^1:[10]"));
    CHECK(vect_dimension(*e, s.br) == 3 + 1 - 2);
    CHECK(is_bicartesian(*e, s));
  }
  {
    const auto e = builtin_vect(2, 1);
    const auto f1 = obj(*e, "F2^1"), z = obj(*e, "0");
    const auto s = complete_span_to_pushout(*e, e->category().identity(f1), unique(*e, f1, z));
    CHECK(vect_dimension(*e, s.br) == 0);
  }
}

TEST_CASE("pullback completions") {
  const auto e = builtin_vect(2, 2);
  const auto& c = e->category();
  const auto z = obj(*e, "0"), f1 = obj(*e, "F2^1");
  // the kernel of F2^2 -> F2
  const auto s = complete_cospan_to_pullback(*e, mor(*e, "F2^2->F2^1:[11]"), unique(*e, z, f1));
  CHECK(vect_dimension(*e, s.tl) == 1);
  CHECK(is_bicartesian(*e, s));
  const auto f2 = obj(*e, "F2^2");
  const auto t = complete_cospan_to_pullback(*e, c.identity(f2), c.identity(f2));
  CHECK(t.tl == t.tr);
  // one leg an iso
  const auto u = complete_cospan_to_pullback(*e, c.identity(f1), mor(*e, "F2^1->F2^1:[1]"));
  CHECK(vect_dimension(*e, u.tl) == 1);
}

TEST_CASE("rank rule agrees with the universal property on vect(2,2)") {
  const auto e = builtin_vect(2, 2);
  const auto& c = e->category();
  std::vector<char> mono(c.num_morphisms()), epi(c.num_morphisms()), zero(c.num_objects());
  for (MorId f = 0; f < c.num_morphisms(); ++f) mono[f] = e->is_mono(f), epi[f] = e->is_epi(f);
  for (ObjId a = 0; a < c.num_objects(); ++a) zero[a] = e->is_zero(a);
  auto u = std::make_shared<ProtoExactStructure>(e->category_ptr(), mono, epi, zero, "universal");
  u->use_universal();
  std::uint64_t squares = 0, bicart = 0;
  for (MorId top = 0; top < c.num_morphisms(); ++top) {
    if (!e->is_mono(top)) continue;
    for (MorId left = 0; left < c.num_morphisms(); ++left) {
      if (!e->is_epi(left) || c.source(left) != c.source(top)) continue;
      for (ObjId br = 0; br < c.num_objects(); ++br)
        for (MorId right = c.hom_begin(c.target(top), br); right < c.hom_begin(c.target(top), br) + c.hom_size(c.target(top), br); ++right) {
          if (!e->is_epi(right)) continue;
          for (MorId bottom = c.hom_begin(c.target(left), br);
               bottom < c.hom_begin(c.target(left), br) + c.hom_size(c.target(left), br); ++bottom) {
            if (!e->is_mono(bottom)) continue;
            const auto s = make_square(c, top, left, right, bottom);
            if (!commutes(c, s)) continue;
            ++squares;
            const bool native = is_bicartesian(*e, s);
            CHECK(native == is_bicartesian(*u, s));
            CHECK(native == (is_pushout(c, s) && is_pullback(c, s)));
            bicart += native;
          }
        }
    }
  }
  CHECK(squares > bicart);
  CHECK(bicart > 0);
}

TEST_CASE("completions are unique up to a unique isomorphism fixing the span") {
  const auto e = builtin_vect(2, 2);
  const auto& c = e->category();
  for (MorId top = 0; top < c.num_morphisms(); ++top)
    for (MorId left = 0; left < c.num_morphisms(); ++left) {
      if (!e->is_mono(top) || !e->is_epi(left) || c.source(top) != c.source(left)) continue;
      const auto all = span_completions(*e, top, left);
      REQUIRE(!all.empty());
      const auto chosen = complete_span_to_pushout(*e, top, left);
      CHECK(chosen == all.front());
      CHECK(chosen.top == top);
      CHECK(chosen.left == left);
      for (const auto& s : all) {
        int links = 0;
        for (MorId phi = 0; phi < c.num_morphisms(); ++phi)
          if (c.source(phi) == chosen.br && c.target(phi) == s.br && c.is_iso(phi) &&
              c.compose(phi, chosen.right) == s.right && c.compose(phi, chosen.bottom) == s.bottom)
            ++links;
        CHECK(links == 1);
      }
    }
}

TEST_CASE("groupoid equivalence checks") {
  const auto e = builtin_vect(2, 2);
  const auto k = core(e->category_ptr());
  FinFunctor id{k.category, k.category, {}, {}};
  for (ObjId a = 0; a < k.category->num_objects(); ++a) id.on_objects.push_back(a);
  for (MorId f = 0; f < k.category->num_morphisms(); ++f) id.on_morphisms.push_back(f);
  const auto r = check_groupoid_equivalence(id);
  CHECK(r.essentially_surjective);
  CHECK(r.fully_faithful);
  CHECK(r.source_classes == r.target_classes);

  const auto sub = full_subcategory(k.category, {0});
  const auto incl = check_groupoid_equivalence(sub.inclusion);
  CHECK_FALSE(incl.essentially_surjective);
  CHECK(incl.fully_faithful);
  CHECK_FALSE(incl.witnesses.empty());

  // zeros 0, 0': the inclusion of {0} is an equivalence
  const auto zs = full_subcategory(k.category, {obj(*e, "0"), obj(*e, "0'")});
  const auto z0 = full_subcategory(zs.category, {0});
  const auto zr = check_groupoid_equivalence(z0.inclusion);
  CHECK(zr.equivalence());
  CHECK(zr.source_classes == zr.target_classes);
}

TEST_CASE("json round trip") {
  for (auto spec : {"vect:2,1", "pointed:3", "zeros:2"}) {
    const auto e = builtin_from_spec(spec);
    const auto j = exact_to_json(*e);
    const auto back = exact_from_json(j);
    CHECK(back->category().num_objects() == e->category().num_objects());
    CHECK(back->category().num_morphisms() == e->category().num_morphisms());
    CHECK(validate_exact(*back).ok());
    CHECK(exact_to_json(*back) == j);
  }
  auto j = exact_to_json(*builtin_zeros(1));
  j["extra"] = 1;
  CHECK_THROWS_AS(exact_from_json(j), Error);
}

TEST_CASE("unsupported builtin parameters") {
  CHECK_THROWS_AS(builtin_vect(6, 2), Error);
  CHECK_THROWS_AS(builtin_vect(2, 5), Error);
  CHECK_THROWS_AS(builtin_pointed_sets(6), Error);
  CHECK_THROWS_AS(builtin_from_spec("nope:1"), Error);
}
