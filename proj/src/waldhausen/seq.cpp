#include "sdot/waldhausen/seq.hpp"

#include <functional>

namespace sdot::waldhausen {

using fincat::CompletionCache;
using fincat::FinCategory;
using fincat::Square;

std::shared_ptr<const DiagramFamily> seq_disc(ExactPtr e, int k, ZeroPolicy policy) {
  if (k < 0) fail(ErrorCode::configuration, "seq level must be nonnegative");
  return DiagramFamily::enumerate(std::move(e), fincat::chain_shape(k, fincat::EdgeClass::mono), policy);
}

namespace {

MorId zero_map(const FinCategory& c, ObjId a, ObjId b) {
  if (c.hom_size(a, b) != 1) fail(ErrorCode::configuration, "expected a unique map " + c.object_label(a) + " -> " + c.object_label(b));
  return c.hom_begin(a, b);
}

Square choose(const ProtoExactStructure& e, CompletionCache* cache, MorId top, MorId left, TieBreak tie) {
  if (!cache) return fincat::complete_span_to_pushout(e, top, left, tie);
  const auto& all = cache->completions(top, left);
  if (all.empty()) fail(ErrorCode::not_exact_closed, "span " + e.category().morphism_label(top) + ", " +
                                                         e.category().morphism_label(left) + " has no bicartesian completion");
  return tie == TieBreak::least ? all.front() : all.back();
}

Diagram face(const ProtoExactStructure& e, const Diagram& c, int i, TieBreak tie, CompletionCache* cache) {
  const FinCategory& cat = e.category();
  const int k = static_cast<int>(c.objects.size());
  if (i < 0 || i > k || k == 0) fail(ErrorCode::configuration, "seq face index out of range");
  Diagram out;
  if (i > 0) {
    out = c;
    const int p = i - 1;
    out.objects.erase(out.objects.begin() + p);
    if (k == 1) return out;
    if (p == 0) {
      out.morphisms.erase(out.morphisms.begin());
    } else if (p == k - 1) {
      out.morphisms.pop_back();
    } else {
      out.morphisms[p - 1] = cat.compose(c.morphisms[p], c.morphisms[p - 1]);
      out.morphisms.erase(out.morphisms.begin() + p);
    }
    return out;
  }
  const ObjId a1 = c.objects[0], z = e.canonical_zero();
  const MorId left = zero_map(cat, a1, z);
  std::vector<Square> q;
  MorId top = cat.identity(a1);
  for (int t = 1; t < k; ++t) {
    top = cat.compose(c.morphisms[t - 1], top);
    q.push_back(choose(e, cache, top, left, tie));
    out.objects.push_back(q.back().br);
  }
  for (int t = 0; t + 1 < static_cast<int>(q.size()); ++t) {
    // the induced map of quotients
    const MorId m = c.morphisms[t + 1];
    const MorId want_a = cat.compose(q[t + 1].right, m);
    MorId found = kNone;
    const ObjId s = q[t].br, d = q[t + 1].br;
    for (MorId w = cat.hom_begin(s, d), we = w + cat.hom_size(s, d); w < we; ++w)
      if (cat.compose(w, q[t].right) == want_a && cat.compose(w, q[t].bottom) == q[t + 1].bottom) {
        if (found != kNone) fail(ErrorCode::not_exact_closed, "induced map of quotients is not unique");
        found = w;
      }
    if (found == kNone) fail(ErrorCode::not_exact_closed, "no induced map of quotients");
    out.morphisms.push_back(found);
  }
  return out;
}

}  // namespace

Diagram seq_face(const ProtoExactStructure& e, const Diagram& c, int i, TieBreak tie) {
  return face(e, c, i, tie, nullptr);
}

Diagram seq_degeneracy(const ProtoExactStructure& e, const Diagram& c, int i) {
  const FinCategory& cat = e.category();
  const int k = static_cast<int>(c.objects.size());
  if (i < 0 || i > k) fail(ErrorCode::configuration, "seq degeneracy index out of range");
  Diagram out = c;
  if (i == 0) {
    const ObjId z = e.canonical_zero();
    out.objects.insert(out.objects.begin(), z);
    if (k > 0) out.morphisms.insert(out.morphisms.begin(), zero_map(cat, z, c.objects[0]));
    return out;
  }
  out.objects.insert(out.objects.begin() + i, c.objects[i - 1]);
  out.morphisms.insert(out.morphisms.begin() + (i - 1), cat.identity(c.objects[i - 1]));
  return out;
}

SeqComplex seq_complex(ExactPtr e, int N, TieBreak tie, ZeroPolicy policy) {
  if (N < 0) fail(ErrorCode::configuration, "seq bound must be nonnegative");
  SeqComplex sc;
  std::vector<std::size_t> sizes;
  for (int k = 0; k <= N; ++k) {
    sc.levels.push_back(seq_disc(e, k, policy));
    sizes.push_back(sc.levels.back()->size());
  }
  auto& x = sc.simplicial;
  x.name = "Seq(" + e->name() + ")";
  x.allocate(N, sizes);
  CompletionCache cache(e);
  Diagram c;
  const auto locate = [&](int k, const Diagram& d) {
    const CellId id = sc.levels[k]->find(d);
    if (id == kNone) fail(ErrorCode::not_exact_closed, "seq operator leaves level " + std::to_string(k));
    return id;
  };
  for (int k = 0; k <= N; ++k)
    for (CellId id = 0; id < sizes[k]; ++id) {
      sc.levels[k]->decode(id, c);
      if (k >= 1)
        for (int i = 0; i <= k; ++i) x.d[k][i][id] = locate(k - 1, face(*e, c, i, tie, &cache));
      if (k < N)
        for (int i = 0; i <= k; ++i) x.s[k][i][id] = locate(k + 1, seq_degeneracy(*e, c, i));
    }
  x.describe_cell = [levels = sc.levels](int k, CellId id) { return levels[k]->describe(id); };
  return sc;
}

namespace {

// Componentwise isomorphism between two chains of equal length.
std::vector<MorId> chain_iso(const FinCategory& c, const Diagram& a, const Diagram& b) {
  const std::size_t n = a.objects.size();
  std::vector<MorId> phi(n, kNone);
  if (b.objects.size() != n) return {};
  bool done = false;
  std::function<void(std::size_t)> rec = [&](std::size_t t) {
    if (done) return;
    if (t == n) {
      done = true;
      return;
    }
    for (MorId f : c.isos_from(a.objects[t])) {
      if (c.target(f) != b.objects[t]) continue;
      if (t > 0 && c.compose(f, a.morphisms[t - 1]) != c.compose(b.morphisms[t - 1], phi[t - 1])) continue;
      phi[t] = f;
      rec(t + 1);
      if (done) return;
    }
  };
  rec(0);
  return done ? phi : std::vector<MorId>{};
}

}  // namespace

std::string SeqWitness::describe(const ProtoExactStructure& e) const {
  const auto shape = fincat::chain_shape(static_cast<int>(lhs.objects.size()), fincat::EdgeClass::mono);
  const auto cshape = fincat::chain_shape(static_cast<int>(cell.objects.size()), fincat::EdgeClass::mono);
  std::string s = "sigma=" + fincat::describe_diagram(e, cshape, cell) + " d0d0=" + fincat::describe_diagram(e, shape, lhs) +
                  " d0d1=" + fincat::describe_diagram(e, shape, rhs);
  if (!iso.empty()) {
    s += " iso=";
    for (std::size_t t = 0; t < iso.size(); ++t) s += (t ? "," : "") + e.category().morphism_label(iso[t]);
  }
  return s;
}

SeqWitness seq_nonsimpliciality_witness(ExactPtr e, TieBreak tie, int max_length) {
  SeqWitness w;
  w.tie = tie;
  CompletionCache cache(e);
  const FinCategory& cat = e->category();
  Diagram c;
  for (int len = 3; len <= max_length; ++len) {
    const auto fam = seq_disc(e, len);
    for (CellId id = 0; id < fam->size(); ++id) {
      fam->decode(id, c);
      const Diagram lhs = face(*e, face(*e, c, 0, tie, &cache), 0, tie, &cache);
      const Diagram rhs = face(*e, face(*e, c, 1, tie, &cache), 0, tie, &cache);
      if (len == 3) {
        ++w.length3_checked;
        w.length3_equal += lhs == rhs;
      }
      if (lhs != rhs && !w.strict_failure) {
        w.strict_failure = true;
        w.length = len;
        w.cell = c;
        w.lhs = lhs;
        w.rhs = rhs;
        w.iso = chain_iso(cat, lhs, rhs);
      }
    }
    if (len == 3) w.certificate_length3 = w.length3_equal == w.length3_checked;
    if (w.strict_failure) break;
  }
  return w;
}

bool verify_seq_witness(ExactPtr e, const SeqWitness& w) {
  const FinCategory& cat = e->category();
  const auto fam = seq_disc(e, 3);
  std::uint64_t equal = 0;
  Diagram c;
  for (CellId id = 0; id < fam->size(); ++id) {
    fam->decode(id, c);
    equal += seq_face(*e, seq_face(*e, c, 0, w.tie), 0, w.tie) == seq_face(*e, seq_face(*e, c, 1, w.tie), 0, w.tie);
  }
  if (fam->size() != w.length3_checked || equal != w.length3_equal) return false;
  if (w.certificate_length3 != (equal == fam->size())) return false;
  if (!w.strict_failure) return w.certificate_length3;
  const auto shape = fincat::chain_shape(static_cast<int>(w.cell.objects.size()), fincat::EdgeClass::mono);
  if (!fincat::diagram_problems(*e, shape, w.cell, ZeroPolicy::all).empty()) return false;
  const Diagram lhs = seq_face(*e, seq_face(*e, w.cell, 0, w.tie), 0, w.tie);
  const Diagram rhs = seq_face(*e, seq_face(*e, w.cell, 1, w.tie), 0, w.tie);
  if (lhs != w.lhs || rhs != w.rhs || lhs == rhs) return false;
  if (w.iso.size() != lhs.objects.size()) return false;
  for (std::size_t t = 0; t < w.iso.size(); ++t) {
    const MorId f = w.iso[t];
    if (f >= cat.num_morphisms() || !cat.is_iso(f) || cat.source(f) != lhs.objects[t] || cat.target(f) != rhs.objects[t])
      return false;
    if (t > 0 && cat.compose(f, lhs.morphisms[t - 1]) != cat.compose(rhs.morphisms[t - 1], w.iso[t - 1])) return false;
  }
  return true;
}

}  // namespace sdot::waldhausen
