#include "sdot/fincat/diagram.hpp"

#include <algorithm>
#include <bit>
#include <deque>

namespace sdot::fincat {

std::uint32_t Shape::add_position(std::vector<int> c, Slot s) {
  const auto id = static_cast<std::uint32_t>(coords.size());
  index_[c] = id;
  coords.push_back(std::move(c));
  slots.push_back(s);
  return id;
}

std::uint32_t Shape::add_edge(std::uint32_t src, std::uint32_t dst, EdgeClass cls) {
  const auto id = static_cast<std::uint32_t>(edges.size());
  edges.push_back({src, dst, cls});
  edge_index_[{src, dst}] = id;
  return id;
}

void Shape::add_square(std::uint32_t top, std::uint32_t left, std::uint32_t right, std::uint32_t bottom, bool bicart) {
  squares.push_back({top, left, right, bottom, bicart});
}

std::uint32_t Shape::find(const std::vector<int>& c) const {
  auto it = index_.find(c);
  return it == index_.end() ? kNone : it->second;
}

std::uint32_t Shape::edge_between(std::uint32_t src, std::uint32_t dst) const {
  auto it = edge_index_.find({src, dst});
  return it == edge_index_.end() ? kNone : it->second;
}

std::vector<std::uint32_t> Shape::path(std::uint32_t from, std::uint32_t to) const {
  if (from == to) return {};
  std::vector<std::uint32_t> via(size(), kNone);
  std::vector<char> seen(size(), 0);
  std::deque<std::uint32_t> queue{from};
  seen[from] = 1;
  while (!queue.empty() && !seen[to]) {
    const std::uint32_t p = queue.front();
    queue.pop_front();
    for (std::uint32_t e = 0; e < edges.size(); ++e)
      if (edges[e].src == p && !seen[edges[e].dst]) {
        seen[edges[e].dst] = 1;
        via[edges[e].dst] = e;
        queue.push_back(edges[e].dst);
      }
  }
  if (!seen[to]) fail(ErrorCode::configuration, "no path from " + label(from) + " to " + label(to) + " in " + name);
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = to; p != from; p = edges[via[p]].src) out.push_back(via[p]);
  std::reverse(out.begin(), out.end());
  return out;
}

std::string Shape::label(std::uint32_t p) const {
  bool small = true;
  for (int c : coords[p]) small = small && c >= 0 && c < 10;
  std::string s = "A";
  for (std::size_t i = 0; i < coords[p].size(); ++i) {
    if (!small && i) s += ',';
    if (small && i && i % 2 == 0 && coords[p].size() > 2) s += '|';
    s += std::to_string(coords[p][i]);
  }
  return s;
}

Shape ar_shape(int k) {
  Shape s;
  s.name = "Ar[" + std::to_string(k) + "]";
  for (int i = 0; i <= k; ++i)
    for (int j = i; j <= k; ++j) s.add_position({i, j}, i == j ? Slot::zero : Slot::free);
  for (int i = 0; i <= k; ++i)
    for (int j = i; j <= k; ++j) {
      if (j < k) s.add_edge(s.find({i, j}), s.find({i, j + 1}), EdgeClass::mono);
      if (i < j) s.add_edge(s.find({i, j}), s.find({i + 1, j}), EdgeClass::epi);
    }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const auto tl = s.find({i, j}), tr = s.find({i, j + 1}), bl = s.find({i + 1, j}), br = s.find({i + 1, j + 1});
      s.add_square(s.edge_between(tl, tr), s.edge_between(tl, bl), s.edge_between(tr, br), s.edge_between(bl, br), true);
    }
  return s;
}

Shape grid_shape(int a, int b) {
  Shape s;
  s.name = "[" + std::to_string(a) + "]x[" + std::to_string(b) + "]";
  for (int r = 0; r <= a; ++r)
    for (int c = 0; c <= b; ++c) s.add_position({r, c}, Slot::free);
  for (int r = 0; r <= a; ++r)
    for (int c = 0; c <= b; ++c) {
      if (c < b) s.add_edge(s.find({r, c}), s.find({r, c + 1}), EdgeClass::mono);
      if (r < a) s.add_edge(s.find({r, c}), s.find({r + 1, c}), EdgeClass::epi);
    }
  for (int r = 0; r < a; ++r)
    for (int c = 0; c < b; ++c) {
      const auto tl = s.find({r, c}), tr = s.find({r, c + 1}), bl = s.find({r + 1, c}), br = s.find({r + 1, c + 1});
      s.add_square(s.edge_between(tl, tr), s.edge_between(tl, bl), s.edge_between(tr, br), s.edge_between(bl, br), true);
    }
  return s;
}

Shape chain_shape(int length, EdgeClass cls) {
  Shape s;
  s.name = "chain(" + std::to_string(length) + ")";
  for (int t = 0; t < length; ++t) s.add_position({t}, Slot::free);
  for (int t = 0; t + 1 < length; ++t) s.add_edge(t, t + 1, cls);
  return s;
}

const char* to_string(MultiConvention c) { return c == MultiConvention::waldhausen ? "waldhausen" : "diagonal"; }

MultiConvention parse_multi_convention(const std::string& s) {
  if (s == "waldhausen") return MultiConvention::waldhausen;
  if (s == "diagonal") return MultiConvention::diagonal;
  fail(ErrorCode::configuration, "multigrid convention must be waldhausen or diagonal, not " + s);
}

Shape multi_ar_shape(const std::vector<int>& ks, MultiConvention conv) {
  const bool diagonal = conv == MultiConvention::diagonal;
  Shape s;
  s.name = diagonal ? "Ar'" : "Ar";
  for (std::size_t t = 0; t < ks.size(); ++t) s.name += (t ? "x[" : "[") + std::to_string(ks[t]) + "]";
  const std::size_t n = ks.size();
  std::vector<int> c(2 * n, 0);
  // lexicographic enumeration of (i_1, j_1, ..., i_n, j_n) with i_t <= j_t <= k_t
  std::function<void(std::size_t)> rec = [&](std::size_t t) {
    if (t == n) {
      bool diag = diagonal;
      for (std::size_t u = 0; u < n; ++u)
        diag = diagonal ? diag && c[2 * u] == c[2 * u + 1] : diag || c[2 * u] == c[2 * u + 1];
      s.add_position(c, diag ? Slot::zero : Slot::free);
      return;
    }
    for (int i = 0; i <= ks[t]; ++i)
      for (int j = i; j <= ks[t]; ++j) {
        c[2 * t] = i;
        c[2 * t + 1] = j;
        rec(t + 1);
      }
  };
  rec(0);
  const auto valid = [&](const std::vector<int>& x) { return s.find(x) != kNone; };
  for (std::uint32_t p = 0; p < s.size(); ++p)
    for (std::size_t t = 0; t < n; ++t) {
      auto h = s.coords[p];
      ++h[2 * t + 1];
      if (valid(h)) s.add_edge(p, s.find(h), EdgeClass::mono);
      auto v = s.coords[p];
      ++v[2 * t];
      if (valid(v)) s.add_edge(p, s.find(v), EdgeClass::epi);
    }
  // moves: (axis, 0 = vertical / 1 = horizontal)
  for (std::uint32_t p = 0; p < s.size(); ++p)
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t u = t; u < n; ++u)
        for (int mt = 0; mt < 2; ++mt)
          for (int mu = 0; mu < 2; ++mu) {
            if (t == u && !(mt == 1 && mu == 0)) continue;  // same axis: top horizontal, left vertical
            auto a = s.coords[p];
            ++a[2 * t + mt];
            auto b = s.coords[p];
            ++b[2 * u + mu];
            auto d = a;
            ++d[2 * u + mu];
            if (!valid(a) || !valid(b) || !valid(d)) continue;
            const bool bicart = t == u || (diagonal && mt != mu);
            // keep the mono step on top
            if (bicart && mt == 0) std::swap(a, b);
            const auto tl = p, tr = s.find(a), bl = s.find(b), br = s.find(d);
            s.add_square(s.edge_between(tl, tr), s.edge_between(tl, bl), s.edge_between(tr, br),
                         s.edge_between(bl, br), bicart);
          }
  return s;
}

Shape ses_shape() {
  Shape s;
  s.name = "SES";
  const auto a = s.add_position({0, 1}, Slot::free);
  const auto b = s.add_position({0, 2}, Slot::free);
  const auto z = s.add_position({1, 1}, Slot::canonical_zero);
  const auto c = s.add_position({1, 2}, Slot::free);
  const auto top = s.add_edge(a, b, EdgeClass::mono);
  const auto left = s.add_edge(a, z, EdgeClass::epi);
  const auto right = s.add_edge(b, c, EdgeClass::epi);
  const auto bottom = s.add_edge(z, c, EdgeClass::mono);
  s.add_square(top, left, right, bottom, true);
  return s;
}

Shape square_shape() {
  Shape s = grid_shape(1, 1);
  s.name = "BiCartSq";
  return s;
}

ShapeMap make_shape_map(const Shape& dom, const Shape& cod,
                        const std::function<std::vector<int>(const std::vector<int>&)>& on_coords) {
  ShapeMap m;
  m.position.resize(dom.size());
  for (std::uint32_t p = 0; p < dom.size(); ++p) {
    m.position[p] = cod.find(on_coords(dom.coords[p]));
    if (m.position[p] == kNone) fail(ErrorCode::configuration, "shape map leaves " + cod.name);
  }
  m.path.resize(dom.edges.size());
  m.edge_src.resize(dom.edges.size());
  for (std::uint32_t e = 0; e < dom.edges.size(); ++e) m.edge_src[e] = dom.edges[e].src;
  for (std::uint32_t e = 0; e < dom.edges.size(); ++e)
    m.path[e] = cod.path(m.position[dom.edges[e].src], m.position[dom.edges[e].dst]);
  return m;
}

void restrict_diagram(const FinCategory& c, const Diagram& in, const ShapeMap& m, Diagram& out) {
  out.objects.resize(m.position.size());
  out.morphisms.resize(m.path.size());
  for (std::size_t p = 0; p < m.position.size(); ++p) out.objects[p] = in.objects[m.position[p]];
  for (std::size_t e = 0; e < m.path.size(); ++e) {
    const auto& path = m.path[e];
    if (path.empty()) {
      out.morphisms[e] = c.identity(out.objects[m.edge_src[e]]);
      continue;
    }
    MorId f = in.morphisms[path[0]];
    for (std::size_t i = 1; i < path.size(); ++i) f = c.compose(in.morphisms[path[i]], f);
    out.morphisms[e] = f;
  }
}

namespace {

bool class_ok(const ProtoExactStructure& e, EdgeClass cls, MorId f) {
  switch (cls) {
    case EdgeClass::mono: return e.is_mono(f);
    case EdgeClass::epi: return e.is_epi(f);
    case EdgeClass::any: return true;
  }
  return false;
}

bool slot_allows(const ProtoExactStructure& e, Slot slot, ZeroPolicy policy, ObjId a) {
  const bool canonical = a == e.canonical_zero();
  if (slot == Slot::canonical_zero) return canonical;
  if (slot == Slot::zero && !e.is_zero(a)) return false;
  if (policy == ZeroPolicy::canonical && e.is_zero(a) && !canonical) return false;
  return true;
}

Square square_of(const Shape& shape, const Shape::Sq& q, const Diagram& d) {
  const auto& ed = shape.edges;
  return {d.objects[ed[q.top].src], d.objects[ed[q.top].dst], d.objects[ed[q.left].dst],
          d.objects[ed[q.right].dst], d.morphisms[q.top], d.morphisms[q.left], d.morphisms[q.right],
          d.morphisms[q.bottom]};
}

unsigned bits_for(std::uint64_t count) { return count <= 1 ? 0 : static_cast<unsigned>(std::bit_width(count - 1)); }

void put_bits(std::uint64_t* w, std::size_t& at, unsigned width, std::uint64_t v) {
  if (width == 0) return;
  const std::size_t word = at / 64, off = at % 64;
  if (off + width <= 64) {
    w[word] |= v << (64 - off - width);
  } else {
    const unsigned hi = static_cast<unsigned>(64 - off), lo = width - hi;
    w[word] |= v >> lo;
    w[word + 1] |= v << (64 - lo);
  }
  at += width;
}

std::uint64_t get_bits(const std::uint64_t* w, std::size_t& at, unsigned width) {
  if (width == 0) return 0;
  const std::size_t word = at / 64, off = at % 64;
  const std::uint64_t mask = width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  std::uint64_t v;
  if (off + width <= 64) {
    v = (w[word] >> (64 - off - width)) & mask;
  } else {
    const unsigned hi = static_cast<unsigned>(64 - off), lo = width - hi;
    v = ((w[word] << lo) | (w[word + 1] >> (64 - lo))) & mask;
  }
  at += width;
  return v;
}

}  // namespace

std::vector<std::string> diagram_problems(const ProtoExactStructure& e, const Shape& shape, const Diagram& d,
                                          ZeroPolicy policy) {
  std::vector<std::string> out;
  const FinCategory& c = e.category();
  if (d.objects.size() != shape.size() || d.morphisms.size() != shape.edges.size()) return {"wrong arity"};
  for (std::uint32_t p = 0; p < shape.size(); ++p)
    if (d.objects[p] >= c.num_objects() || !slot_allows(e, shape.slots[p], policy, d.objects[p]))
      out.push_back(shape.label(p) + " holds a disallowed object");
  if (!out.empty()) return out;
  for (std::uint32_t i = 0; i < shape.edges.size(); ++i) {
    const auto& ed = shape.edges[i];
    const MorId f = d.morphisms[i];
    if (f >= c.num_morphisms() || c.source(f) != d.objects[ed.src] || c.target(f) != d.objects[ed.dst]) {
      out.push_back("edge " + shape.label(ed.src) + "->" + shape.label(ed.dst) + " has wrong endpoints");
      continue;
    }
    if (!class_ok(e, ed.cls, f))
      out.push_back("edge " + shape.label(ed.src) + "->" + shape.label(ed.dst) + " is outside its class");
  }
  if (!out.empty()) return out;
  for (const auto& q : shape.squares) {
    const Square s = square_of(shape, q, d);
    const std::string where = "square at " + shape.label(shape.edges[q.top].src);
    if (!commutes(c, s))
      out.push_back(where + " does not commute");
    else if (q.bicartesian && !e.bicartesian_unchecked(s))
      out.push_back(where + " is not bicartesian");
  }
  return out;
}

std::string describe_diagram(const ProtoExactStructure& e, const Shape& shape, const Diagram& d) {
  const FinCategory& c = e.category();
  std::string s = "{";
  for (std::uint32_t p = 0; p < shape.size(); ++p) {
    if (p) s += ' ';
    s += shape.label(p) + "=" + c.object_label(d.objects[p]);
  }
  for (std::uint32_t i = 0; i < shape.edges.size(); ++i) {
    const MorId f = d.morphisms[i];
    if (c.hom_size(c.source(f), c.target(f)) <= 1) continue;
    const std::string& l = c.morphism_label(f);
    const auto colon = l.rfind(':');
    s += " " + shape.label(shape.edges[i].src) + ">" + shape.label(shape.edges[i].dst) + "=" +
         (colon == std::string::npos ? l : l.substr(colon + 1));
  }
  return s + "}";
}

const std::vector<Square>& CompletionCache::completions(MorId top, MorId left) {
  const std::uint64_t key = (std::uint64_t{top} << 32) | left;
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  return memo_.emplace(key, span_completions(*e_, top, left)).first->second;
}

DiagramFamily::DiagramFamily(ExactPtr e, Shape shape, ZeroPolicy policy)
    : e_(std::move(e)), shape_(std::move(shape)), policy_(policy) {
  const std::size_t n = shape_.size();
  completion_.assign(n, -1);
  incident_.assign(n, {});
  for (std::uint32_t p = 0; p < n; ++p) {
    for (std::size_t qi = 0; qi < shape_.squares.size(); ++qi) {
      const auto& q = shape_.squares[qi];
      if (!q.bicartesian) continue;
      const auto& ed = shape_.edges;
      if (ed[q.right].dst != p || ed[q.top].src >= p || ed[q.top].dst >= p || ed[q.left].dst >= p) continue;
      completion_[p] = static_cast<std::int32_t>(qi);
      incident_[p] = {q.right, q.bottom};
      break;
    }
    for (std::uint32_t i = 0; i < shape_.edges.size(); ++i) {
      const auto& ed = shape_.edges[i];
      if (std::max(ed.src, ed.dst) != p) continue;
      if (ed.src == ed.dst) fail(ErrorCode::configuration, "shape has a loop");
      if (std::find(incident_[p].begin(), incident_[p].end(), i) == incident_[p].end()) incident_[p].push_back(i);
    }
  }
  const FinCategory& c = e_->category();
  obj_bits_ = bits_for(c.num_objects());
  mor_bits_ = bits_for(c.max_hom_size());
  std::size_t total = 0;
  for (std::uint32_t p = 0; p < n; ++p) total += obj_bits_ + incident_[p].size() * mor_bits_;
  words_ = std::max<std::size_t>(1, (total + 63) / 64);
}

void DiagramFamily::encode(const Diagram& d, std::uint64_t* out) const {
  std::fill(out, out + words_, 0);
  const FinCategory& c = e_->category();
  std::size_t at = 0;
  for (std::uint32_t p = 0; p < shape_.size(); ++p) {
    put_bits(out, at, obj_bits_, d.objects[p]);
    for (std::uint32_t i : incident_[p]) put_bits(out, at, mor_bits_, c.local_index(d.morphisms[i]));
  }
}

void DiagramFamily::decode(CellId x, Diagram& d) const {
  const FinCategory& c = e_->category();
  const std::uint64_t* w = codes_.data() + std::size_t{x} * words_;
  d.objects.resize(shape_.size());
  d.morphisms.resize(shape_.edges.size());
  std::size_t at = 0;
  for (std::uint32_t p = 0; p < shape_.size(); ++p) {
    d.objects[p] = static_cast<ObjId>(get_bits(w, at, obj_bits_));
    for (std::uint32_t i : incident_[p]) {
      const auto& ed = shape_.edges[i];
      d.morphisms[i] = c.hom_begin(d.objects[ed.src], d.objects[ed.dst]) + static_cast<MorId>(get_bits(w, at, mor_bits_));
    }
  }
}

Diagram DiagramFamily::diagram(CellId x) const {
  Diagram d;
  decode(x, d);
  return d;
}

CellId DiagramFamily::find(const Diagram& d) const {
  if (d.objects.size() != shape_.size() || d.morphisms.size() != shape_.edges.size()) return kNone;
  const FinCategory& c = e_->category();
  for (std::uint32_t p = 0; p < shape_.size(); ++p)
    if (d.objects[p] >= c.num_objects()) return kNone;
  for (std::uint32_t i = 0; i < shape_.edges.size(); ++i) {
    const auto& ed = shape_.edges[i];
    const MorId f = d.morphisms[i];
    if (f >= c.num_morphisms() || c.source(f) != d.objects[ed.src] || c.target(f) != d.objects[ed.dst]) return kNone;
  }
  std::vector<std::uint64_t> key(words_);
  encode(d, key.data());
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const std::uint64_t* w = codes_.data() + mid * words_;
    if (std::lexicographical_compare(w, w + words_, key.begin(), key.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < size() && std::equal(key.begin(), key.end(), codes_.begin() + lo * words_)) return static_cast<CellId>(lo);
  return kNone;
}

std::size_t DiagramFamily::zero_count(CellId x) const {
  const Diagram d = diagram(x);
  std::size_t z = 0;
  for (ObjId a : d.objects) z += e_->is_zero(a) ? 1 : 0;
  return z;
}

class DiagramEnumerator {
 public:
  DiagramEnumerator(DiagramFamily& fam, CompletionCache& cache) : f_(fam), cache_(cache) {
    const Shape& s = f_.shape_;
    const std::size_t n = s.size();
    cur_.objects.assign(n, kNone);
    cur_.morphisms.assign(s.edges.size(), kNone);
    // squares to test once their last edge is assigned, keyed by (position, slot)
    std::vector<std::pair<std::uint32_t, std::size_t>> assigned_at(s.edges.size());
    for (std::uint32_t p = 0; p < n; ++p)
      for (std::size_t k = 0; k < f_.incident_[p].size(); ++k) assigned_at[f_.incident_[p][k]] = {p, k};
    checks_.assign(n, {});
    for (std::uint32_t p = 0; p < n; ++p) checks_[p].assign(f_.incident_[p].size(), {});
    for (std::size_t qi = 0; qi < s.squares.size(); ++qi) {
      const auto& q = s.squares[qi];
      auto last = std::max({assigned_at[q.top], assigned_at[q.left], assigned_at[q.right], assigned_at[q.bottom]});
      if (f_.completion_[last.first] == static_cast<std::int32_t>(qi)) continue;
      checks_[last.first][last.second].push_back(static_cast<std::uint32_t>(qi));
    }
    const FinCategory& c = f_.e_->category();
    allowed_.assign(n, std::vector<char>(c.num_objects(), 0));
    candidates_.assign(n, {});
    for (std::uint32_t p = 0; p < n; ++p)
      for (ObjId a = 0; a < c.num_objects(); ++a)
        if (slot_allows(*f_.e_, s.slots[p], f_.policy_, a)) {
          allowed_[p][a] = 1;
          candidates_[p].push_back(a);
        }
    buf_.assign(f_.words_, 0);
  }

  void run() {
    place(0);
    charge(f_.size(), "diagram enumeration");
  }

 private:
  void place(std::uint32_t p) {
    const Shape& s = f_.shape_;
    if (p == s.size()) {
      emit();
      return;
    }
    const std::int32_t qi = f_.completion_[p];
    if (qi >= 0) {
      const auto& q = s.squares[qi];
      const auto& options = cache_.completions(cur_.morphisms[q.top], cur_.morphisms[q.left]);
      for (const Square& sq : options) {
        if (!allowed_[p][sq.br]) continue;
        cur_.objects[p] = sq.br;
        cur_.morphisms[q.right] = sq.right;
        cur_.morphisms[q.bottom] = sq.bottom;
        assign(p, 2);
      }
      return;
    }
    for (ObjId a : candidates_[p]) {
      cur_.objects[p] = a;
      assign(p, 0);
    }
  }

  void assign(std::uint32_t p, std::size_t k) {
    const auto& inc = f_.incident_[p];
    if (k == inc.size()) {
      place(p + 1);
      return;
    }
    const ProtoExactStructure& e = *f_.e_;
    const FinCategory& c = e.category();
    const auto& ed = f_.shape_.edges[inc[k]];
    const ObjId a = cur_.objects[ed.src], b = cur_.objects[ed.dst];
    if (k < 2 && f_.completion_[p] >= 0) {
      if (squares_ok(p, k)) assign(p, k + 1);
      return;
    }
    for (MorId m = c.hom_begin(a, b), me = m + c.hom_size(a, b); m < me; ++m) {
      if (!class_ok(e, ed.cls, m)) continue;
      cur_.morphisms[inc[k]] = m;
      if (squares_ok(p, k)) assign(p, k + 1);
    }
  }

  bool squares_ok(std::uint32_t p, std::size_t k) const {
    const ProtoExactStructure& e = *f_.e_;
    for (std::uint32_t qi : checks_[p][k]) {
      const auto& q = f_.shape_.squares[qi];
      const Square s = square_of(f_.shape_, q, cur_);
      if (!commutes(e.category(), s)) return false;
      if (q.bicartesian && !e.bicartesian_unchecked(s)) return false;
    }
    return true;
  }

  void emit() {
    f_.encode(cur_, buf_.data());
    f_.codes_.insert(f_.codes_.end(), buf_.begin(), buf_.end());
    if ((f_.codes_.size() / f_.words_) % (1u << 16) == 0) charge(f_.codes_.size(), "diagram storage (words)");
  }

  DiagramFamily& f_;
  CompletionCache& cache_;
  Diagram cur_;
  std::vector<std::vector<std::vector<std::uint32_t>>> checks_;
  std::vector<std::vector<char>> allowed_;
  std::vector<std::vector<ObjId>> candidates_;
  std::vector<std::uint64_t> buf_;
};

namespace {

void sort_codes(std::vector<std::uint64_t>& codes, std::size_t words) {
  const std::size_t n = codes.size() / words;
  const auto less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(codes.begin() + a * words, codes.begin() + (a + 1) * words,
                                        codes.begin() + b * words, codes.begin() + (b + 1) * words);
  };
  bool sorted = true;
  for (std::size_t i = 1; i < n && sorted; ++i) sorted = less(i - 1, i);
  if (sorted) return;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), less);
  std::vector<std::uint64_t> out;
  out.reserve(codes.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (i && !less(order[i - 1], order[i])) continue;
    out.insert(out.end(), codes.begin() + order[i] * words, codes.begin() + (order[i] + 1) * words);
  }
  codes.swap(out);
}

}  // namespace

std::shared_ptr<const DiagramFamily> DiagramFamily::enumerate(ExactPtr e, Shape shape, ZeroPolicy policy,
                                                              CompletionCache* cache) {
  std::shared_ptr<DiagramFamily> fam(new DiagramFamily(e, std::move(shape), policy));
  std::unique_ptr<CompletionCache> own;
  if (!cache) {
    own = std::make_unique<CompletionCache>(e);
    cache = own.get();
  }
  DiagramEnumerator(*fam, *cache).run();
  sort_codes(fam->codes_, fam->words_);
  fam->codes_.shrink_to_fit();
  return fam;
}

std::shared_ptr<const DiagramFamily> DiagramFamily::from_diagrams(ExactPtr e, Shape shape, ZeroPolicy policy,
                                                                  std::vector<Diagram> diagrams) {
  std::shared_ptr<DiagramFamily> fam(new DiagramFamily(e, std::move(shape), policy));
  std::vector<std::uint64_t> buf(fam->words_);
  for (const Diagram& d : diagrams) {
    if (!diagram_problems(*e, fam->shape_, d, policy).empty())
      fail(ErrorCode::configuration, "diagram outside the family " + fam->shape_.name);
    fam->encode(d, buf.data());
    fam->codes_.insert(fam->codes_.end(), buf.begin(), buf.end());
  }
  sort_codes(fam->codes_, fam->words_);
  return fam;
}

DiagramGroupoid::DiagramGroupoid(std::shared_ptr<const DiagramFamily> family)
    : family_(std::move(family)), classes_(iso_classes(family_->exact().category())) {}

std::uint64_t DiagramGroupoid::invariant(std::size_t x) const {
  const Diagram d = family_->diagram(static_cast<CellId>(x));
  std::uint64_t h = 1469598103934665603ull;
  for (ObjId a : d.objects) h = (h ^ classes_.class_of[a]) * 1099511628211ull;
  return h;
}

std::uint64_t DiagramGroupoid::iso_choices(std::uint32_t p, ObjId a) const {
  const ProtoExactStructure& e = family_->exact();
  std::uint64_t n = 0;
  for (MorId f : e.category().isos_from(a))
    if (slot_allows(e, family_->shape().slots[p], family_->policy(), e.category().target(f))) ++n;
  return n;
}

template <class Accept>
void DiagramGroupoid::search(const Diagram& x, const Diagram& y, const std::vector<char>* fixed,
                             bool automorphisms_only, Accept&& accept) const {
  const FinCategory& c = family_->exact().category();
  const Shape& s = family_->shape();
  const auto& inc = family_->incident_edges();
  const std::size_t n = s.size();
  Arrow phi(n, kNone);
  bool stop = false;
  const auto consistent = [&](std::uint32_t p) {
    for (std::uint32_t i : inc[p]) {
      const auto& ed = s.edges[i];
      if (c.compose(phi[ed.dst], x.morphisms[i]) != c.compose(y.morphisms[i], phi[ed.src])) return false;
    }
    return true;
  };
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t p) {
    if (stop) return;
    if (p == n) {
      if (!accept(phi)) stop = true;
      return;
    }
    const ObjId a = x.objects[p], b = y.objects[p];
    if (fixed && (*fixed)[p]) {
      if (a != b) return;
      phi[p] = c.identity(a);
      if (consistent(p)) rec(p + 1);
      return;
    }
    for (MorId f : c.isos_from(a)) {
      if (c.target(f) != b) continue;
      if (automorphisms_only && b != a) continue;
      phi[p] = f;
      if (consistent(p)) rec(p + 1);
      if (stop) return;
    }
  };
  rec(0);
}

void DiagramGroupoid::for_each_iso(std::size_t x, std::size_t y,
                                   const std::function<bool(const Arrow&)>& visit) const {
  const Diagram dx = family_->diagram(static_cast<CellId>(x)), dy = family_->diagram(static_cast<CellId>(y));
  search(dx, dy, nullptr, false, [&](const Arrow& a) { return visit(a); });
}

DiagramGroupoid::Relative DiagramGroupoid::relative_symmetry(CellId x, const std::vector<char>& fixed,
                                                             std::uint64_t stabilizer_cap) const {
  Relative r;
  const Diagram d = family_->diagram(x);
  for (std::uint32_t p = 0; p < d.objects.size(); ++p) {
    if (fixed[p]) continue;
    const std::uint64_t k = iso_choices(p, d.objects[p]);
    r.families = r.families > (std::uint64_t{1} << 62) / std::max<std::uint64_t>(k, 1) ? (std::uint64_t{1} << 62)
                                                                                       : r.families * k;
  }
  r.stabilizer = 0;
  search(d, d, &fixed, true, [&](const Arrow&) { return ++r.stabilizer < stabilizer_cap; });
  return r;
}

bool DiagramGroupoid::relatively_isomorphic(CellId x, CellId y, const std::vector<char>& fixed) const {
  const Diagram dx = family_->diagram(x), dy = family_->diagram(y);
  bool found = false;
  search(dx, dy, &fixed, false, [&](const Arrow&) {
    found = true;
    return false;
  });
  return found;
}

}  // namespace sdot::fincat
