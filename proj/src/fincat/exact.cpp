#include "sdot/fincat/exact.hpp"

#include <algorithm>
#include <unordered_set>

namespace sdot::fincat {

Square make_square(const FinCategory& c, MorId top, MorId left, MorId right, MorId bottom) {
  Square s;
  s.top = top;
  s.left = left;
  s.right = right;
  s.bottom = bottom;
  s.tl = c.source(top);
  s.tr = c.target(top);
  s.bl = c.target(left);
  s.br = c.target(right);
  return s;
}

bool commutes(const FinCategory& c, const Square& s) {
  const MorId a = c.compose(s.right, s.top);
  return a != kNone && a == c.compose(s.bottom, s.left);
}

bool is_pushout(const FinCategory& c, const Square& s) {
  if (!commutes(c, s)) return false;
  std::vector<std::uint32_t> cu, cv;
  std::unordered_set<std::uint64_t> images;
  for (ObjId x = 0; x < c.num_objects(); ++x) {
    const std::uint32_t nk = c.hom_size(s.tl, x);
    const MorId kb = c.hom_begin(s.tl, x);
    cu.assign(nk, 0);
    cv.assign(nk, 0);
    for (MorId u = c.hom_begin(s.tr, x), e = u + c.hom_size(s.tr, x); u < e; ++u) ++cu[c.compose(u, s.top) - kb];
    for (MorId v = c.hom_begin(s.bl, x), e = v + c.hom_size(s.bl, x); v < e; ++v) ++cv[c.compose(v, s.left) - kb];
    std::uint64_t pairs = 0;
    for (std::uint32_t k = 0; k < nk; ++k) pairs += std::uint64_t{cu[k]} * cv[k];
    if (pairs != c.hom_size(s.br, x)) return false;
    images.clear();
    for (MorId w = c.hom_begin(s.br, x), e = w + c.hom_size(s.br, x); w < e; ++w) {
      const std::uint64_t key = (std::uint64_t{c.compose(w, s.right)} << 32) | c.compose(w, s.bottom);
      if (!images.insert(key).second) return false;
    }
  }
  return true;
}

bool is_pullback(const FinCategory& c, const Square& s) {
  if (!commutes(c, s)) return false;
  std::vector<std::uint32_t> cu, cv;
  std::unordered_set<std::uint64_t> images;
  for (ObjId x = 0; x < c.num_objects(); ++x) {
    const std::uint32_t nk = c.hom_size(x, s.br);
    const MorId kb = c.hom_begin(x, s.br);
    cu.assign(nk, 0);
    cv.assign(nk, 0);
    for (MorId u = c.hom_begin(x, s.tr), e = u + c.hom_size(x, s.tr); u < e; ++u) ++cu[c.compose(s.right, u) - kb];
    for (MorId v = c.hom_begin(x, s.bl), e = v + c.hom_size(x, s.bl); v < e; ++v) ++cv[c.compose(s.bottom, v) - kb];
    std::uint64_t pairs = 0;
    for (std::uint32_t k = 0; k < nk; ++k) pairs += std::uint64_t{cu[k]} * cv[k];
    if (pairs != c.hom_size(x, s.tl)) return false;
    images.clear();
    for (MorId w = c.hom_begin(x, s.tl), e = w + c.hom_size(x, s.tl); w < e; ++w) {
      const std::uint64_t key = (std::uint64_t{c.compose(s.top, w)} << 32) | c.compose(s.left, w);
      if (!images.insert(key).second) return false;
    }
  }
  return true;
}

ProtoExactStructure::ProtoExactStructure(std::shared_ptr<const FinCategory> c, std::vector<char> mono,
                                         std::vector<char> epi, std::vector<char> zero, std::string name)
    : cat_(std::move(c)), mono_(std::move(mono)), epi_(std::move(epi)), zero_(std::move(zero)), name_(std::move(name)) {
  if (mono_.size() != cat_->num_morphisms() || epi_.size() != cat_->num_morphisms() ||
      zero_.size() != cat_->num_objects())
    fail(ErrorCode::configuration, "class flags do not match the category");
  for (ObjId a = 0; a < zero_.size(); ++a)
    if (zero_[a]) zeros_.push_back(a);
  if (zeros_.empty()) fail(ErrorCode::configuration, "no zero object designated");
}

void ProtoExactStructure::use_designated(std::vector<Square> squares) {
  rule_ = BicartesianRule::designated;
  designated_.clear();
  for (const Square& s : squares) designated_.insert({s.top, s.left, s.right, s.bottom});
}

void ProtoExactStructure::use_universal() { rule_ = BicartesianRule::universal; }

void ProtoExactStructure::use_native(std::function<bool(const Square&)> rule) {
  rule_ = BicartesianRule::native;
  native_ = std::move(rule);
}

bool ProtoExactStructure::bicartesian_unchecked(const Square& s) const {
  switch (rule_) {
    case BicartesianRule::designated: return designated_.count({s.top, s.left, s.right, s.bottom}) != 0;
    case BicartesianRule::universal: return is_pushout(*cat_, s) && is_pullback(*cat_, s);
    case BicartesianRule::native: return native_(s);
  }
  return false;
}

namespace {

std::string square_problem(const ProtoExactStructure& e, const Square& s) {
  const FinCategory& c = e.category();
  const std::size_t m = c.num_morphisms();
  if (s.top >= m || s.left >= m || s.right >= m || s.bottom >= m) return "unknown morphism";
  if (c.source(s.top) != c.source(s.left) || c.target(s.top) != c.source(s.right) ||
      c.target(s.left) != c.source(s.bottom) || c.target(s.right) != c.target(s.bottom))
    return "edges do not form a square";
  if ((s.tl != kNone && s.tl != c.source(s.top)) || (s.tr != kNone && s.tr != c.target(s.top)) ||
      (s.bl != kNone && s.bl != c.target(s.left)) || (s.br != kNone && s.br != c.target(s.right)))
    return "corner objects disagree with edges";
  if (!e.is_mono(s.top) || !e.is_mono(s.bottom)) return "horizontal edge is not an admissible mono";
  if (!e.is_epi(s.left) || !e.is_epi(s.right)) return "vertical edge is not an admissible epi";
  if (!commutes(c, s)) return "square does not commute";
  return {};
}

}  // namespace

bool is_bicartesian(const ProtoExactStructure& e, const Square& s) {
  const std::string problem = square_problem(e, s);
  if (!problem.empty()) fail(ErrorCode::rejected_square, problem);
  return e.bicartesian_unchecked(make_square(e.category(), s.top, s.left, s.right, s.bottom));
}

std::vector<Square> span_completions(const ProtoExactStructure& e, MorId top, MorId left) {
  const FinCategory& c = e.category();
  if (c.source(top) != c.source(left)) fail(ErrorCode::rejected_square, "span legs have different sources");
  if (!e.is_mono(top) || !e.is_epi(left)) fail(ErrorCode::rejected_square, "span legs are not mono/epi");
  const ObjId tl = c.source(top), tr = c.target(top), bl = c.target(left);
  std::vector<Square> out;
  std::vector<std::pair<MorId, MorId>> bottoms;
  for (ObjId br = 0; br < c.num_objects(); ++br) {
    bottoms.clear();
    for (MorId v = c.hom_begin(bl, br), ve = v + c.hom_size(bl, br); v < ve; ++v)
      if (e.is_mono(v)) bottoms.emplace_back(c.compose(v, left), v);
    if (bottoms.empty()) continue;
    std::sort(bottoms.begin(), bottoms.end());
    for (MorId u = c.hom_begin(tr, br), ue = u + c.hom_size(tr, br); u < ue; ++u) {
      if (!e.is_epi(u)) continue;
      const MorId key = c.compose(u, top);
      auto lo = std::lower_bound(bottoms.begin(), bottoms.end(), std::pair<MorId, MorId>(key, 0));
      for (; lo != bottoms.end() && lo->first == key; ++lo) {
        Square s{tl, tr, bl, br, top, left, u, lo->second};
        if (e.bicartesian_unchecked(s)) out.push_back(s);
      }
    }
  }
  return out;
}

std::vector<Square> cospan_completions(const ProtoExactStructure& e, MorId right, MorId bottom) {
  const FinCategory& c = e.category();
  if (c.target(right) != c.target(bottom)) fail(ErrorCode::rejected_square, "cospan legs have different targets");
  if (!e.is_epi(right) || !e.is_mono(bottom)) fail(ErrorCode::rejected_square, "cospan legs are not epi/mono");
  const ObjId tr = c.source(right), bl = c.source(bottom), br = c.target(right);
  std::vector<Square> out;
  std::vector<std::pair<MorId, MorId>> lefts;
  for (ObjId tl = 0; tl < c.num_objects(); ++tl) {
    lefts.clear();
    for (MorId v = c.hom_begin(tl, bl), ve = v + c.hom_size(tl, bl); v < ve; ++v)
      if (e.is_epi(v)) lefts.emplace_back(c.compose(bottom, v), v);
    if (lefts.empty()) continue;
    std::sort(lefts.begin(), lefts.end());
    for (MorId u = c.hom_begin(tl, tr), ue = u + c.hom_size(tl, tr); u < ue; ++u) {
      if (!e.is_mono(u)) continue;
      const MorId key = c.compose(right, u);
      auto lo = std::lower_bound(lefts.begin(), lefts.end(), std::pair<MorId, MorId>(key, 0));
      std::vector<MorId> matches;
      for (; lo != lefts.end() && lo->first == key; ++lo) matches.push_back(lo->second);
      std::sort(matches.begin(), matches.end());
      for (MorId l : matches) {
        Square s{tl, tr, bl, br, u, l, right, bottom};
        if (e.bicartesian_unchecked(s)) out.push_back(s);
      }
    }
  }
  return out;
}

Square complete_span_to_pushout(const ProtoExactStructure& e, MorId top, MorId left, TieBreak tie) {
  auto all = span_completions(e, top, left);
  if (all.empty())
    fail(ErrorCode::not_exact_closed, "span " + e.category().morphism_label(top) + ", " +
                                          e.category().morphism_label(left) + " has no bicartesian completion");
  return tie == TieBreak::least ? all.front() : all.back();
}

Square complete_cospan_to_pullback(const ProtoExactStructure& e, MorId right, MorId bottom, TieBreak tie) {
  auto all = cospan_completions(e, right, bottom);
  if (all.empty())
    fail(ErrorCode::not_exact_closed, "cospan " + e.category().morphism_label(right) + ", " +
                                          e.category().morphism_label(bottom) + " has no bicartesian completion");
  return tie == TieBreak::least ? all.front() : all.back();
}

Validation validate_exact(const ProtoExactStructure& e) {
  Validation v;
  const FinCategory& c = e.category();
  const std::size_t n = c.num_objects();
  for (ObjId a = 0; a < n; ++a) {
    if (!e.is_mono(c.identity(a))) v.add("mono-identity", {a}, "identity of " + c.object_label(a) + " is not mono");
    if (!e.is_epi(c.identity(a))) v.add("epi-identity", {a}, "identity of " + c.object_label(a) + " is not epi");
  }
  for (MorId f = 0; f < c.num_morphisms(); ++f) {
    if (!e.is_mono(f) && !e.is_epi(f)) continue;
    const ObjId b = c.target(f);
    for (ObjId x = 0; x < n; ++x)
      for (MorId g = c.hom_begin(b, x), ge = g + c.hom_size(b, x); g < ge; ++g) {
        ++v.checked;
        const MorId gf = c.compose(g, f);
        if (e.is_mono(f) && e.is_mono(g) && !e.is_mono(gf))
          v.add("mono-closure", {g, f}, "composite of monos " + c.morphism_label(g) + "∘" + c.morphism_label(f));
        if (e.is_epi(f) && e.is_epi(g) && !e.is_epi(gf))
          v.add("epi-closure", {g, f}, "composite of epis " + c.morphism_label(g) + "∘" + c.morphism_label(f));
      }
  }
  for (ObjId z : e.zeros())
    for (ObjId a = 0; a < n; ++a) {
      if (c.hom_size(z, a) != 1 || !e.is_mono(c.hom_begin(z, a)))
        v.add("zero-source", {z, a}, "zero " + c.object_label(z) + " lacks a unique mono to " + c.object_label(a));
      if (c.hom_size(a, z) != 1 || !e.is_epi(c.hom_begin(a, z)))
        v.add("zero-target", {a, z}, "zero " + c.object_label(z) + " lacks a unique epi from " + c.object_label(a));
    }
  if (e.rule() == BicartesianRule::designated)
    for (const auto& [t, l, r, b] : e.designated()) {
      const std::string problem = square_problem(e, make_square(c, t, l, r, b));
      if (!problem.empty()) v.add("designated-square", {t, l, r, b}, problem);
    }
  return v;
}

}  // namespace sdot::fincat
