#include "sdot/fincat/builtin.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

namespace sdot::fincat {

namespace {

struct Field {
  int q = 2;
  std::array<std::array<std::uint8_t, 5>, 5> add{}, mul{};
  std::array<std::uint8_t, 5> neg{}, inv{};

  explicit Field(int order) : q(order) {
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        if (q == 4) {
          add[a][b] = static_cast<std::uint8_t>(a ^ b);
          static constexpr std::uint8_t m4[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
          mul[a][b] = m4[a][b];
        } else {
          add[a][b] = static_cast<std::uint8_t>((a + b) % q);
          mul[a][b] = static_cast<std::uint8_t>((a * b) % q);
        }
      }
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        if (add[a][b] == 0) neg[a] = static_cast<std::uint8_t>(b);
        if (mul[a][b] == 1) inv[a] = static_cast<std::uint8_t>(b);
      }
  }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return add[a][neg[b]]; }
};

struct Matrix {
  int rows = 0, cols = 0;
  std::array<std::uint8_t, 64> e{};
  std::uint8_t& at(int r, int c) { return e[r * cols + c]; }
  std::uint8_t at(int r, int c) const { return e[r * cols + c]; }
};

int rank(const Field& f, Matrix m) {
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = r;
    while (p < m.rows && m.at(p, c) == 0) ++p;
    if (p == m.rows) continue;
    for (int k = 0; k < m.cols; ++k) std::swap(m.at(p, k), m.at(r, k));
    const std::uint8_t iv = f.inv[m.at(r, c)];
    for (int k = 0; k < m.cols; ++k) m.at(r, k) = f.mul[m.at(r, k)][iv];
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      const std::uint8_t factor = m.at(i, c);
      for (int k = 0; k < m.cols; ++k) m.at(i, k) = f.sub(m.at(i, k), f.mul[factor][m.at(r, k)]);
    }
    ++r;
  }
  return r;
}

class VectData {
 public:
  VectData(int q, int dmax) : field(q), dmax(dmax) {
    for (int d = 0; d <= dmax; ++d) dims.push_back(d);
    dims.push_back(0);
  }
  Field field;
  int dmax;
  std::vector<int> dims;
  std::vector<MorId> begin;  // per (a,b)
  std::vector<ObjId> src, dst;

  std::size_t n() const { return dims.size(); }
  std::uint64_t hom_count(ObjId a, ObjId b) const {
    std::uint64_t c = 1;
    for (int i = 0; i < dims[a] * dims[b]; ++i) c *= field.q;
    return c;
  }
  Matrix decode(MorId f) const {
    const ObjId a = src[f], b = dst[f];
    Matrix m;
    m.rows = dims[b];
    m.cols = dims[a];
    std::uint64_t x = f - begin[a * n() + b];
    for (int r = 0; r < m.rows; ++r)
      for (int c = 0; c < m.cols; ++c) {
        const auto digit = static_cast<std::uint8_t>(x % field.q);
        x /= field.q;
        m.at(r, c) = field.add[digit][r == c ? 1 : 0];
      }
    return m;
  }
  MorId encode(ObjId a, ObjId b, const Matrix& m) const {
    std::uint64_t x = 0, w = 1;
    for (int r = 0; r < m.rows; ++r)
      for (int c = 0; c < m.cols; ++c) {
        x += w * field.sub(m.at(r, c), r == c ? 1 : 0);
        w *= field.q;
      }
    return begin[a * n() + b] + static_cast<MorId>(x);
  }
  Matrix multiply(const Matrix& g, const Matrix& f) const {
    Matrix h;
    h.rows = g.rows;
    h.cols = f.cols;
    for (int r = 0; r < h.rows; ++r)
      for (int c = 0; c < h.cols; ++c) {
        std::uint8_t s = 0;
        for (int k = 0; k < g.cols; ++k) s = field.add[s][field.mul[g.at(r, k)][f.at(k, c)]];
        h.at(r, c) = s;
      }
    return h;
  }
  std::string label(MorId f) const {
    const Matrix m = decode(f);
    std::string s = obj_label(src[f]) + "->" + obj_label(dst[f]) + ":[";
    for (int r = 0; r < m.rows; ++r) {
      if (r) s += ';';
      for (int c = 0; c < m.cols; ++c) s += static_cast<char>('0' + m.at(r, c));
    }
    return s + "]";
  }
  std::string obj_label(ObjId a) const {
    if (a == n() - 1) return "0'";
    if (dims[a] == 0) return "0";
    return "F" + std::to_string(field.q) + "^" + std::to_string(dims[a]);
  }
};

Matrix inverse_matrix(const Field& f, const Matrix& m, bool& ok) {
  const int d = m.rows;
  Matrix a;
  a.rows = d;
  a.cols = 2 * d;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      a.at(r, c) = m.at(r, c);
      a.at(r, d + c) = r == c ? 1 : 0;
    }
  ok = false;
  for (int c = 0; c < d; ++c) {
    int p = c;
    while (p < d && a.at(p, c) == 0) ++p;
    if (p == d) return m;
    for (int k = 0; k < 2 * d; ++k) std::swap(a.at(p, k), a.at(c, k));
    const std::uint8_t iv = f.inv[a.at(c, c)];
    for (int k = 0; k < 2 * d; ++k) a.at(c, k) = f.mul[a.at(c, k)][iv];
    for (int i = 0; i < d; ++i) {
      if (i == c || a.at(i, c) == 0) continue;
      const std::uint8_t factor = a.at(i, c);
      for (int k = 0; k < 2 * d; ++k) a.at(i, k) = f.sub(a.at(i, k), f.mul[factor][a.at(c, k)]);
    }
  }
  ok = true;
  Matrix out;
  out.rows = out.cols = d;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) out.at(r, c) = a.at(r, d + c);
  return out;
}

}  // namespace

ExactPtr builtin_vect(int q, int dmax) {
  if (q != 2 && q != 3 && q != 4 && q != 5) fail(ErrorCode::configuration, "vect: q must be 2, 3, 4 or 5");
  if (dmax < 0 || dmax > 4) fail(ErrorCode::configuration, "vect: dmax must lie in 0..4");
  auto data = std::make_shared<VectData>(q, dmax);
  const std::size_t n = data->n();
  std::uint64_t total = 0;
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b) total += data->hom_count(a, b);
  charge(total, "vect morphisms");
  data->begin.assign(n * n, 0);
  FinCategory::Builder builder;
  for (ObjId a = 0; a < n; ++a) builder.add_object(data->obj_label(a));
  MorId next = 0;
  for (ObjId a = 0; a < n; ++a)
    for (ObjId b = 0; b < n; ++b) {
      data->begin[a * n + b] = next;
      const std::uint64_t cnt = data->hom_count(a, b);
      for (std::uint64_t i = 0; i < cnt; ++i) {
        data->src.push_back(a);
        data->dst.push_back(b);
      }
      next += static_cast<MorId>(cnt);
    }
  for (MorId f = 0; f < next; ++f) builder.add_morphism(data->src[f], data->dst[f], data->label(f));
  for (ObjId a = 0; a < n; ++a) builder.set_identity(a, data->begin[a * n + a]);
  builder.set_native({[data](MorId g, MorId f) {
                        return data->encode(data->src[f], data->dst[g],
                                            data->multiply(data->decode(g), data->decode(f)));
                      },
                      [data](MorId f) -> MorId {
                        const ObjId a = data->src[f], b = data->dst[f];
                        if (data->dims[a] != data->dims[b]) return kNone;
                        bool ok = false;
                        const Matrix inv = inverse_matrix(data->field, data->decode(f), ok);
                        return ok ? data->encode(b, a, inv) : kNone;
                      }});
  auto cat = std::make_shared<const FinCategory>(std::move(builder).build());
  std::vector<char> mono(next), epi(next), zero(n);
  for (MorId f = 0; f < next; ++f) {
    const int r = rank(data->field, data->decode(f));
    mono[f] = r == data->dims[data->src[f]];
    epi[f] = r == data->dims[data->dst[f]];
  }
  for (ObjId a = 0; a < n; ++a) zero[a] = data->dims[a] == 0;
  auto e = std::make_shared<ProtoExactStructure>(cat, std::move(mono), std::move(epi), std::move(zero),
                                                 "vect(" + std::to_string(q) + "," + std::to_string(dmax) + ")");
  e->use_native([data](const Square& s) {
    const auto& d = data->dims;
    if (d[s.tl] - d[s.tr] - d[s.bl] + d[s.br] != 0) return false;
    // tl -> tr (+) bl -> br must be exact in the middle.
    const Matrix r = data->decode(s.right), b = data->decode(s.bottom);
    Matrix m;
    m.rows = d[s.br];
    m.cols = d[s.tr] + d[s.bl];
    for (int i = 0; i < m.rows; ++i) {
      for (int c = 0; c < d[s.tr]; ++c) m.at(i, c) = r.at(i, c);
      for (int c = 0; c < d[s.bl]; ++c) m.at(i, d[s.tr] + c) = data->field.neg[b.at(i, c)];
    }
    return m.cols - rank(data->field, m) == d[s.tl];
  });
  return e;
}

int vect_dimension(const ProtoExactStructure& e, ObjId a) {
  const std::string& l = e.category().object_label(a);
  if (l == "0" || l == "0'") return 0;
  return std::atoi(l.substr(l.find('^') + 1).c_str());
}

ExactPtr builtin_pointed_sets(int nmax) {
  if (nmax < 1 || nmax > 5) fail(ErrorCode::configuration, "pointed: nmax must lie in 1..5");
  const auto set_label = [](int n) {
    std::string s = "{*";
    for (int i = 1; i < n; ++i) s += "," + std::to_string(i);
    return s + "}";
  };
  // a morphism a -> b is the image list of 1..a-1, digit base b, element 1 least significant
  std::vector<std::vector<int>> images;
  std::vector<ObjId> src, dst;
  std::vector<MorId> begin(nmax * nmax);
  FinCategory::Builder builder;
  for (int a = 1; a <= nmax; ++a) builder.add_object(set_label(a));
  for (int a = 1; a <= nmax; ++a)
    for (int b = 1; b <= nmax; ++b) {
      begin[(a - 1) * nmax + (b - 1)] = static_cast<MorId>(images.size());
      std::uint64_t cnt = 1;
      for (int i = 1; i < a; ++i) cnt *= b;
      for (std::uint64_t x = 0; x < cnt; ++x) {
        std::vector<int> img(a, 0);
        std::uint64_t y = x;
        for (int i = 1; i < a; ++i) {
          img[i] = static_cast<int>(y % b);
          y /= b;
        }
        std::string l = set_label(a) + "->" + set_label(b) + ":(";
        for (int i = 1; i < a; ++i) l += (i > 1 ? "," : "") + (img[i] ? std::to_string(img[i]) : std::string("*"));
        builder.add_morphism(a - 1, b - 1, l + ")");
        images.push_back(std::move(img));
        src.push_back(a - 1);
        dst.push_back(b - 1);
      }
    }
  const auto encode = [&](int b, const std::vector<int>& img) {
    const int a = static_cast<int>(img.size());
    std::uint64_t x = 0, w = 1;
    for (int i = 1; i < a; ++i) {
      x += w * img[i];
      w *= b;
    }
    return begin[(a - 1) * nmax + (b - 1)] + static_cast<MorId>(x);
  };
  for (int a = 1; a <= nmax; ++a) {
    std::vector<int> id(a);
    for (int i = 0; i < a; ++i) id[i] = i;
    builder.set_identity(a - 1, encode(a, id));
  }
  for (MorId f = 0; f < images.size(); ++f) {
    const ObjId b = dst[f];
    for (ObjId c = 0; c < static_cast<ObjId>(nmax); ++c) {
      const MorId gb = begin[b * nmax + c];
      std::uint64_t cnt = 1;
      for (ObjId i = 1; i <= b; ++i) cnt *= c + 1;
      for (MorId g = gb; g < gb + cnt; ++g) {
        std::vector<int> h(images[f].size());
        for (std::size_t i = 0; i < h.size(); ++i) h[i] = images[g][images[f][i]];
        builder.set_composite(g, f, encode(static_cast<int>(c) + 1, h));
      }
    }
  }
  auto cat = std::make_shared<const FinCategory>(std::move(builder).build());
  const std::size_t m = cat->num_morphisms();
  std::vector<char> mono(m), epi(m), zero(nmax);
  for (MorId f = 0; f < m; ++f) {
    const auto& img = images[f];
    const int b = static_cast<int>(dst[f]) + 1;
    std::vector<int> fiber(b, 0);
    for (std::size_t i = 0; i < img.size(); ++i) ++fiber[img[i]];
    bool inj = true, collapse = true;
    for (int y = 1; y < b; ++y) collapse = collapse && fiber[y] == 1;
    for (int y = 0; y < b; ++y) inj = inj && fiber[y] <= 1;
    mono[f] = inj;
    epi[f] = collapse;
  }
  zero[0] = 1;
  auto e = std::make_shared<ProtoExactStructure>(cat, mono, epi, std::move(zero),
                                                 "pointed_sets(" + std::to_string(nmax) + ")");
  std::vector<Square> squares;
  const FinCategory& c = *cat;
  for (MorId top = 0; top < m; ++top) {
    if (!mono[top]) continue;
    const ObjId tl = c.source(top), tr = c.target(top);
    for (ObjId bl = 0; bl < c.num_objects(); ++bl)
      for (MorId left = c.hom_begin(tl, bl); left < c.hom_begin(tl, bl) + c.hom_size(tl, bl); ++left) {
        if (!epi[left]) continue;
        for (ObjId br = 0; br < c.num_objects(); ++br)
          for (MorId right = c.hom_begin(tr, br); right < c.hom_begin(tr, br) + c.hom_size(tr, br); ++right) {
            if (!epi[right]) continue;
            for (MorId bottom = c.hom_begin(bl, br); bottom < c.hom_begin(bl, br) + c.hom_size(bl, br); ++bottom) {
              if (!mono[bottom]) continue;
              const Square s{tl, tr, bl, br, top, left, right, bottom};
              if (commutes(c, s) && is_pushout(c, s) && is_pullback(c, s)) squares.push_back(s);
            }
          }
      }
  }
  e->use_designated(std::move(squares));
  return e;
}

ExactPtr builtin_zeros(int count) {
  if (count < 1 || count > 16) fail(ErrorCode::configuration, "zeros: count must lie in 1..16");
  FinCategory::Builder builder;
  for (int a = 0; a < count; ++a) builder.add_object("z" + std::to_string(a));
  std::vector<MorId> ids(count * count);
  for (int a = 0; a < count; ++a)
    for (int b = 0; b < count; ++b)
      ids[a * count + b] = builder.add_morphism(a, b, "z" + std::to_string(a) + "->z" + std::to_string(b));
  for (int a = 0; a < count; ++a) builder.set_identity(a, ids[a * count + a]);
  for (int a = 0; a < count; ++a)
    for (int b = 0; b < count; ++b)
      for (int x = 0; x < count; ++x) builder.set_composite(ids[b * count + x], ids[a * count + b], ids[a * count + x]);
  auto cat = std::make_shared<const FinCategory>(std::move(builder).build());
  const std::size_t m = cat->num_morphisms();
  auto e = std::make_shared<ProtoExactStructure>(cat, std::vector<char>(m, 1), std::vector<char>(m, 1),
                                                 std::vector<char>(count, 1), "zeros(" + std::to_string(count) + ")");
  e->use_universal();
  return e;
}

ExactPtr builtin_from_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  std::vector<int> args;
  if (colon != std::string::npos) {
    std::string rest = spec.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto comma = rest.find(',', pos);
      const std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      char* end = nullptr;
      const long v = std::strtol(tok.c_str(), &end, 10);
      if (tok.empty() || *end != '\0') fail(ErrorCode::configuration, "bad builtin argument '" + tok + "'");
      args.push_back(static_cast<int>(v));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  if (kind == "vect" && args.size() == 2) return builtin_vect(args[0], args[1]);
  if (kind == "pointed" && args.size() == 1) return builtin_pointed_sets(args[0]);
  if (kind == "zeros" && args.size() <= 1) return builtin_zeros(args.empty() ? 1 : args[0]);
  fail(ErrorCode::configuration, "unknown builtin '" + spec + "' (expected vect:q,d, pointed:n or zeros:n)");
}

}  // namespace sdot::fincat
