#include "sdot/fincat/category.hpp"

#include <algorithm>
#include <numeric>

namespace sdot::fincat {

namespace {
constexpr std::uint64_t kMaxTable = std::uint64_t{1} << 24;
constexpr std::size_t kMaxViolations = 64;
}  // namespace

void Validation::add(std::string kind, std::vector<std::uint32_t> ids, std::string message) {
  if (violations.size() < kMaxViolations)
    violations.push_back({std::move(kind), std::move(ids), std::move(message)});
  else if (violations.size() == kMaxViolations)
    violations.push_back({"truncated", {}, "further violations omitted"});
}

std::optional<ObjId> FinCategory::find_object(const std::string& label) const {
  for (ObjId a = 0; a < num_objects(); ++a)
    if (object_labels_[a] == label) return a;
  return std::nullopt;
}

std::optional<MorId> FinCategory::find_morphism(const std::string& label) const {
  for (MorId f = 0; f < num_morphisms(); ++f)
    if (morphism_labels_[f] == label) return f;
  return std::nullopt;
}

MorId FinCategory::compose(MorId g, MorId f) const {
  if (f >= num_morphisms() || g >= num_morphisms()) return kNone;
  const ObjId a = sources_[f], b = targets_[f];
  if (sources_[g] != b) return kNone;
  const ObjId c = targets_[g];
  if (!comp_offset_.empty()) {
    const std::size_t n = num_objects();
    const std::uint64_t at = comp_offset_[(a * n + b) * n + c] +
                             std::uint64_t{local_index(f)} * hom_size(b, c) + local_index(g);
    const std::uint32_t local = comp_table_[at];
    return local == kNone ? kNone : hom_begin(a, c) + local;
  }
  return native_.compose(g, f);
}

ObjId FinCategory::Builder::add_object(std::string label) {
  objects_.push_back(std::move(label));
  identity_.push_back(kNone);
  return static_cast<ObjId>(objects_.size() - 1);
}

MorId FinCategory::Builder::add_morphism(ObjId src, ObjId dst, std::string label) {
  if (src >= objects_.size() || dst >= objects_.size())
    fail(ErrorCode::configuration, "morphism endpoint out of range");
  src_.push_back(src);
  dst_.push_back(dst);
  labels_.push_back(std::move(label));
  return static_cast<MorId>(src_.size() - 1);
}

void FinCategory::Builder::set_identity(ObjId a, MorId f) { identity_.at(a) = f; }

void FinCategory::Builder::set_composite(MorId g, MorId f, MorId gf) {
  composites_.push_back({g, f, gf});
}

void FinCategory::Builder::set_native(NativeOps ops) {
  for (std::size_t i = 1; i < src_.size(); ++i)
    if (std::pair(src_[i - 1], dst_[i - 1]) > std::pair(src_[i], dst_[i]))
      fail(ErrorCode::configuration, "native composition needs morphisms in hom order");
  native_ = std::move(ops);
}

FinCategory FinCategory::Builder::build(std::vector<MorId>* remap) && {
  FinCategory c;
  const std::size_t n = objects_.size(), m = src_.size();
  std::vector<MorId> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](MorId x, MorId y) {
    return std::pair(src_[x], dst_[x]) < std::pair(src_[y], dst_[y]);
  });
  std::vector<MorId> final_id(m);
  for (std::size_t i = 0; i < m; ++i) final_id[order[i]] = static_cast<MorId>(i);

  c.object_labels_ = std::move(objects_);
  c.sources_.resize(m);
  c.targets_.resize(m);
  c.morphism_labels_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    c.sources_[i] = src_[order[i]];
    c.targets_[i] = dst_[order[i]];
    c.morphism_labels_[i] = std::move(labels_[order[i]]);
  }
  c.hom_begin_.assign(n * n, 0);
  c.hom_size_.assign(n * n, 0);
  for (std::size_t i = 0; i < m; ++i) ++c.hom_size_[c.sources_[i] * n + c.targets_[i]];
  MorId running = 0;
  for (std::size_t k = 0; k < n * n; ++k) {
    c.hom_begin_[k] = running;
    running += c.hom_size_[k];
    c.max_hom_size_ = std::max(c.max_hom_size_, c.hom_size_[k]);
  }
  c.identities_.resize(n);
  for (std::size_t a = 0; a < n; ++a)
    c.identities_[a] = identity_[a] == kNone ? kNone : final_id.at(identity_[a]);

  std::uint64_t total = 0;
  c.comp_offset_.assign(n * n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t cc = 0; cc < n; ++cc) {
        c.comp_offset_[(a * n + b) * n + cc] = total;
        total += std::uint64_t{c.hom_size_[a * n + b]} * c.hom_size_[b * n + cc];
      }
  if (native_.compose && total > kMaxTable) {
    c.comp_offset_.clear();
    c.native_ = std::move(native_);
  } else {
    charge(total, "composition table");
    c.comp_table_.assign(total, kNone);
    if (native_.compose) {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t cc = 0; cc < n; ++cc) {
            const std::uint64_t base = c.comp_offset_[(a * n + b) * n + cc];
            const std::uint32_t nf = c.hom_size_[a * n + b], ng = c.hom_size_[b * n + cc];
            const MorId fb = c.hom_begin_[a * n + b], gb = c.hom_begin_[b * n + cc];
            const MorId hb = c.hom_begin_[a * n + cc];
            for (std::uint32_t lf = 0; lf < nf; ++lf)
              for (std::uint32_t lg = 0; lg < ng; ++lg)
                c.comp_table_[base + std::uint64_t{lf} * ng + lg] = native_.compose(gb + lg, fb + lf) - hb;
          }
      c.native_.inverse = std::move(native_.inverse);
    } else {
      for (const auto& [g0, f0, gf0] : composites_) {
        if (g0 >= m || f0 >= m || gf0 >= m) fail(ErrorCode::configuration, "composite refers to unknown morphism");
        const MorId g = final_id[g0], f = final_id[f0], gf = final_id[gf0];
        const ObjId a = c.sources_[f], b = c.targets_[f], cc = c.targets_[g];
        if (c.sources_[g] != b) fail(ErrorCode::configuration, "composite of non-composable pair");
        if (c.sources_[gf] != a || c.targets_[gf] != cc)
          fail(ErrorCode::configuration, "composite has wrong endpoints");
        const std::uint64_t at = c.comp_offset_[(a * n + b) * n + cc] +
                                 std::uint64_t{c.local_index(f)} * c.hom_size_[b * n + cc] + c.local_index(g);
        c.comp_table_[at] = c.local_index(gf);
      }
    }
  }
  if (remap) *remap = final_id;
  c.finish();
  return c;
}

void FinCategory::finish() {
  const std::size_t n = num_objects(), m = num_morphisms();
  inverses_.assign(m, kNone);
  if (native_.inverse) {
    for (MorId f = 0; f < m; ++f) inverses_[f] = native_.inverse(f);
  } else {
    std::uint64_t work = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) work += std::uint64_t{hom_size(a, b)} * hom_size(b, a);
    charge(work, "inverse search");
    for (MorId f = 0; f < m; ++f) {
      const ObjId a = sources_[f], b = targets_[f];
      if (identities_[a] == kNone || identities_[b] == kNone) continue;
      for (MorId g = hom_begin(b, a), e = g + hom_size(b, a); g < e; ++g)
        if (compose(g, f) == identities_[a] && compose(f, g) == identities_[b]) {
          inverses_[f] = g;
          break;
        }
    }
  }
  isos_from_.assign(n, {});
  for (MorId f = 0; f < m; ++f)
    if (inverses_[f] != kNone) isos_from_[sources_[f]].push_back(f);
}

Validation validate_category(const FinCategory& c) {
  Validation v;
  const std::size_t n = c.num_objects();
  for (ObjId a = 0; a < n; ++a) {
    const MorId id = c.identity(a);
    if (id == kNone || c.source(id) != a || c.target(id) != a)
      v.add("identity", {a}, "object " + c.object_label(a) + " lacks an identity");
  }
  if (!v.ok()) return v;
  std::uint64_t triples = 0;
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b)
      for (ObjId x = 0; x < n; ++x)
        for (ObjId d = 0; d < n; ++d)
          triples += std::uint64_t{c.hom_size(a, b)} * c.hom_size(b, x) * c.hom_size(x, d);
  charge(triples, "associativity audit");
  for (MorId f = 0; f < c.num_morphisms(); ++f) {
    const ObjId a = c.source(f), b = c.target(f);
    if (c.compose(f, c.identity(a)) != f) v.add("unit", {f}, "f∘id ≠ f for " + c.morphism_label(f));
    if (c.compose(c.identity(b), f) != f) v.add("unit", {f}, "id∘f ≠ f for " + c.morphism_label(f));
    ++v.checked;
  }
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b)
      for (ObjId x = 0; x < n; ++x)
        for (MorId f = c.hom_begin(a, b), fe = f + c.hom_size(a, b); f < fe; ++f)
          for (MorId g = c.hom_begin(b, x), ge = g + c.hom_size(b, x); g < ge; ++g) {
            const MorId gf = c.compose(g, f);
            ++v.checked;
            if (gf == kNone) {
              v.add("closure", {g, f}, "missing composite " + c.morphism_label(g) + "∘" + c.morphism_label(f));
              continue;
            }
            for (ObjId d = 0; d < n; ++d)
              for (MorId h = c.hom_begin(x, d), he = h + c.hom_size(x, d); h < he; ++h) {
                const MorId hg = c.compose(h, g);
                if (hg == kNone) continue;
                const MorId lhs = c.compose(h, gf), rhs = c.compose(hg, f);
                if (lhs != rhs)
                  v.add("associativity", {h, g, f},
                        "(h∘g)∘f ≠ h∘(g∘f) for " + c.morphism_label(h) + "," + c.morphism_label(g) + "," +
                            c.morphism_label(f));
              }
          }
  return v;
}

Validation validate_functor(const FinFunctor& fn) {
  Validation v;
  const FinCategory& s = *fn.source;
  const FinCategory& t = *fn.target;
  if (fn.on_objects.size() != s.num_objects() || fn.on_morphisms.size() != s.num_morphisms()) {
    v.add("shape", {}, "functor tables have the wrong size");
    return v;
  }
  for (MorId f = 0; f < s.num_morphisms(); ++f) {
    const MorId ff = fn.on_morphisms[f];
    if (ff >= t.num_morphisms() || t.source(ff) != fn.on_objects[s.source(f)] ||
        t.target(ff) != fn.on_objects[s.target(f)])
      v.add("endpoints", {f}, "image of " + s.morphism_label(f) + " has wrong endpoints");
  }
  if (!v.ok()) return v;
  for (ObjId a = 0; a < s.num_objects(); ++a)
    if (fn.on_morphisms[s.identity(a)] != t.identity(fn.on_objects[a]))
      v.add("identity", {a}, "identity of " + s.object_label(a) + " not preserved");
  for (MorId f = 0; f < s.num_morphisms(); ++f) {
    const ObjId b = s.target(f);
    for (ObjId x = 0; x < s.num_objects(); ++x)
      for (MorId g = s.hom_begin(b, x), ge = g + s.hom_size(b, x); g < ge; ++g) {
        ++v.checked;
        if (fn.on_morphisms[s.compose(g, f)] != t.compose(fn.on_morphisms[g], fn.on_morphisms[f]))
          v.add("composition", {g, f}, "composite " + s.morphism_label(g) + "∘" + s.morphism_label(f) + " not preserved");
      }
  }
  return v;
}

IsoClassIndex iso_classes(const FinCategory& c) {
  IsoClassIndex idx;
  const std::size_t n = c.num_objects();
  idx.class_of.assign(n, kNone);
  for (ObjId a = 0; a < n; ++a) {
    ObjId rep = a;
    for (MorId f : c.isos_from(a)) rep = std::min(rep, c.target(f));
    if (rep == a) {
      idx.class_of[a] = static_cast<std::uint32_t>(idx.representatives.size());
      idx.representatives.push_back(a);
    } else {
      idx.class_of[a] = idx.class_of[rep];
    }
  }
  return idx;
}

namespace {

Subcategory restrict_to(std::shared_ptr<const FinCategory> c, const std::vector<ObjId>& objects, bool isos_only) {
  FinCategory::Builder b;
  std::vector<ObjId> local(c->num_objects(), kNone);
  for (ObjId a : objects) {
    if (a >= c->num_objects()) fail(ErrorCode::configuration, "subcategory object out of range");
    local[a] = b.add_object(c->object_label(a));
  }
  std::vector<MorId> kept;
  std::vector<MorId> local_mor(c->num_morphisms(), kNone);
  for (ObjId a : objects)
    for (ObjId x : objects)
      for (MorId f = c->hom_begin(a, x), e = f + c->hom_size(a, x); f < e; ++f) {
        if (isos_only && !c->is_iso(f)) continue;
        local_mor[f] = b.add_morphism(local[a], local[x], c->morphism_label(f));
        kept.push_back(f);
      }
  std::uint64_t pairs = 0;
  for (MorId f : kept)
    for (ObjId x : objects) pairs += c->hom_size(c->target(f), x);
  charge(pairs, "subcategory composition");
  for (ObjId a : objects) b.set_identity(local[a], local_mor[c->identity(a)]);
  for (MorId f : kept)
    for (ObjId x : objects)
      for (MorId g = c->hom_begin(c->target(f), x), e = g + c->hom_size(c->target(f), x); g < e; ++g)
        if (local_mor[g] != kNone) b.set_composite(local_mor[g], local_mor[f], local_mor[c->compose(g, f)]);
  std::vector<MorId> remap;
  auto sub = std::make_shared<const FinCategory>(std::move(b).build(&remap));
  FinFunctor inc{sub, c, objects, std::vector<MorId>(sub->num_morphisms())};
  for (std::size_t i = 0; i < kept.size(); ++i) inc.on_morphisms[remap[i]] = kept[i];
  return {sub, inc};
}

}  // namespace

Subcategory core(std::shared_ptr<const FinCategory> c) {
  std::vector<ObjId> all(c->num_objects());
  std::iota(all.begin(), all.end(), 0);
  return restrict_to(std::move(c), all, true);
}

Subcategory full_subcategory(std::shared_ptr<const FinCategory> c, const std::vector<ObjId>& objects) {
  return restrict_to(std::move(c), objects, false);
}

}  // namespace sdot::fincat
