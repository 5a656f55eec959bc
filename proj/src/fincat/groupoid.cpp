#include "sdot/fincat/groupoid.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace sdot::fincat {

std::optional<Arrow> FiniteGroupoid::find_iso(std::size_t x, std::size_t y) const {
  std::optional<Arrow> out;
  if (invariant(x) != invariant(y)) return out;
  for_each_iso(x, y, [&](const Arrow& a) {
    out = a;
    return false;
  });
  return out;
}

std::vector<Arrow> FiniteGroupoid::automorphisms(std::size_t x) const {
  std::vector<Arrow> out;
  for_each_iso(x, x, [&](const Arrow& a) {
    out.push_back(a);
    return true;
  });
  return out;
}

GroupoidClasses groupoid_classes(const FiniteGroupoid& g) {
  GroupoidClasses out;
  out.class_of.assign(g.size(), kNone);
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
  for (std::size_t x = 0; x < g.size(); ++x) {
    auto& reps = buckets[g.invariant(x)];
    for (std::uint32_t cls : reps)
      if (g.find_iso(out.representatives[cls], x)) {
        out.class_of[x] = cls;
        break;
      }
    if (out.class_of[x] == kNone) {
      out.class_of[x] = static_cast<std::uint32_t>(out.representatives.size());
      reps.push_back(out.class_of[x]);
      out.representatives.push_back(x);
    }
  }
  return out;
}

EquivalenceReport check_groupoid_equivalence(const FiniteGroupoid& source, const FiniteGroupoid& target,
                                             const GroupoidFunctor& f) {
  EquivalenceReport r;
  const GroupoidClasses sc = groupoid_classes(source);
  const GroupoidClasses tc = groupoid_classes(target);
  r.source_classes = sc.size();
  r.target_classes = tc.size();
  // Images are classified against the target's class representatives.
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
  for (std::uint32_t cls = 0; cls < tc.size(); ++cls)
    buckets[target.invariant(tc.representatives[cls])].push_back(cls);
  std::vector<std::size_t> hit_by(tc.size(), kNone);
  for (std::size_t cls = 0; cls < sc.size(); ++cls) {
    const std::size_t x = sc.representatives[cls];
    const std::size_t fx = f.object(x);
    std::uint32_t tcls = kNone;
    for (std::uint32_t c : buckets[target.invariant(fx)])
      if (target.find_iso(tc.representatives[c], fx)) {
        tcls = c;
        break;
      }
    if (tcls == kNone) {
      r.fully_faithful = false;
      r.witnesses.push_back("image of " + source.describe(x) + " is isomorphic to no target object");
      continue;
    }
    if (hit_by[tcls] != kNone) {
      r.fully_faithful = false;
      r.witnesses.push_back("non-isomorphic " + source.describe(hit_by[tcls]) + " and " + source.describe(x) +
                            " have isomorphic images");
    } else {
      hit_by[tcls] = x;
    }
    const auto autos = source.automorphisms(x);
    std::set<Arrow> images;
    for (const Arrow& a : autos) images.insert(f.arrow(x, x, a));
    const std::size_t target_autos = target.automorphisms(fx).size();
    if (images.size() != autos.size()) {
      r.fully_faithful = false;
      r.witnesses.push_back("automorphisms of " + source.describe(x) + " are not mapped injectively");
    }
    if (images.size() != target_autos) {
      r.fully_faithful = false;
      r.witnesses.push_back("Aut(" + source.describe(x) + ") has " + std::to_string(autos.size()) +
                            " elements, Aut of its image " + std::to_string(target_autos));
    }
  }
  for (std::uint32_t c = 0; c < tc.size(); ++c)
    if (hit_by[c] == kNone) {
      r.essentially_surjective = false;
      r.witnesses.push_back("target class of " + target.describe(tc.representatives[c]) + " is missed");
    }
  return r;
}

EquivalenceReport check_groupoid_equivalence(const FinFunctor& f) {
  EquivalenceReport r;
  const FinCategory& s = *f.source;
  const FinCategory& t = *f.target;
  r.source_classes = iso_classes(s).size();
  r.target_classes = iso_classes(t).size();
  for (ObjId y = 0; y < t.num_objects(); ++y) {
    bool hit = false;
    for (ObjId x = 0; x < s.num_objects() && !hit; ++x) hit = t.hom_size(f.on_objects[x], y) > 0;
    if (!hit) {
      r.essentially_surjective = false;
      r.witnesses.push_back("target object " + t.object_label(y) + " is missed");
    }
  }
  for (ObjId x = 0; x < s.num_objects(); ++x)
    for (ObjId y = 0; y < s.num_objects(); ++y) {
      const ObjId fx = f.on_objects[x], fy = f.on_objects[y];
      std::vector<char> seen(t.hom_size(fx, fy), 0);
      std::size_t distinct = 0;
      for (MorId m = s.hom_begin(x, y), e = m + s.hom_size(x, y); m < e; ++m) {
        char& slot = seen[t.local_index(f.on_morphisms[m])];
        if (!slot) ++distinct;
        slot = 1;
      }
      if (distinct != s.hom_size(x, y) || distinct != t.hom_size(fx, fy)) {
        r.fully_faithful = false;
        r.witnesses.push_back("hom(" + s.object_label(x) + "," + s.object_label(y) + ") is not mapped bijectively");
      }
    }
  return r;
}

std::uint64_t CategoryGroupoid::invariant(std::size_t x) const {
  std::uint64_t autos = 0;
  for (MorId f : c_->isos_from(static_cast<ObjId>(x)))
    if (c_->target(f) == x) ++autos;
  return autos;
}

void CategoryGroupoid::for_each_iso(std::size_t x, std::size_t y,
                                    const std::function<bool(const Arrow&)>& visit) const {
  for (MorId f : c_->isos_from(static_cast<ObjId>(x)))
    if (c_->target(f) == y && !visit(Arrow{f})) return;
}

bool is_groupoid(const FinCategory& c) {
  for (MorId f = 0; f < c.num_morphisms(); ++f)
    if (!c.is_iso(f)) return false;
  return true;
}

}  // namespace sdot::fincat
