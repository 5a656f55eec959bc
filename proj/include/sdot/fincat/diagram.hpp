#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "sdot/fincat/exact.hpp"
#include "sdot/fincat/groupoid.hpp"

namespace sdot::fincat {

enum class EdgeClass : std::uint8_t { mono, epi, any };

// all: every zero object may sit at a zero position. canonical: only the
// least-id zero appears anywhere (a full subgroupoid equivalent to the whole).
enum class ZeroPolicy : std::uint8_t { all, canonical };

enum class Slot : std::uint8_t { free, zero, canonical_zero };

// Finite poset-like indexing shape: positions with integer coordinates,
// generating edges and the elementary squares a diagram must respect.
struct Shape {
  struct Edge {
    std::uint32_t src, dst;
    EdgeClass cls;
  };
  // Mono edges run along top/bottom, epi edges along left/right.
  struct Sq {
    std::uint32_t top, left, right, bottom;
    bool bicartesian;
  };

  std::string name;
  std::vector<std::vector<int>> coords;
  std::vector<Slot> slots;
  std::vector<Edge> edges;
  std::vector<Sq> squares;

  std::size_t size() const { return coords.size(); }
  std::uint32_t add_position(std::vector<int> c, Slot s);
  std::uint32_t add_edge(std::uint32_t src, std::uint32_t dst, EdgeClass cls);
  void add_square(std::uint32_t top, std::uint32_t left, std::uint32_t right, std::uint32_t bottom, bool bicart);
  std::uint32_t find(const std::vector<int>& c) const;
  std::uint32_t edge_between(std::uint32_t src, std::uint32_t dst) const;
  // Edge path from one position to another; empty when equal.
  std::vector<std::uint32_t> path(std::uint32_t from, std::uint32_t to) const;
  std::string label(std::uint32_t p) const;

 private:
  std::map<std::vector<int>, std::uint32_t> index_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> edge_index_;
};

// Ar[k]: positions (i,j), 0 ≤ i ≤ j ≤ k, zero diagonal.
Shape ar_shape(int k);
// [a]×[b]: positions (r,s); edges (r,s)->(r+1,s) epi, (r,s)->(r,s+1) mono.
Shape grid_shape(int a, int b);
// Positions 0..length-1 linked by edges of one class.
Shape chain_shape(int length, EdgeClass cls);
// waldhausen: a position is zero as soon as one axis sits on its diagonal, and
// mixed squares only commute (the iterate of S on functor categories).
// diagonal: zero only at ((i_1,i_1),…,(i_n,i_n)), and every square with two epi
// and two mono sides is bicartesian, whatever the axes.
enum class MultiConvention : std::uint8_t { waldhausen, diagonal };
const char* to_string(MultiConvention c);
MultiConvention parse_multi_convention(const std::string& s);

// Ar[k_1]×…×Ar[k_n], coordinates (i_1,j_1,…,i_n,j_n).
Shape multi_ar_shape(const std::vector<int>& ks, MultiConvention conv = MultiConvention::waldhausen);
// A ↣ B ↠ C exhibited by a bicartesian square over the canonical zero.
Shape ses_shape();
// A bicartesian square tl, tr, bl, br.
Shape square_shape();

struct Diagram {
  std::vector<ObjId> objects;
  std::vector<MorId> morphisms;
  auto operator<=>(const Diagram&) const = default;
};

// Restriction data for a map of shapes dom -> cod.
struct ShapeMap {
  std::vector<std::uint32_t> position;
  std::vector<std::vector<std::uint32_t>> path;  // empty: identity
  std::vector<std::uint32_t> edge_src;           // domain position of each edge's source
};

ShapeMap make_shape_map(const Shape& dom, const Shape& cod,
                        const std::function<std::vector<int>(const std::vector<int>&)>& on_coords);
void restrict_diagram(const FinCategory& c, const Diagram& in, const ShapeMap& m, Diagram& out);

std::vector<std::string> diagram_problems(const ProtoExactStructure& e, const Shape& shape, const Diagram& d,
                                          ZeroPolicy policy);
std::string describe_diagram(const ProtoExactStructure& e, const Shape& shape, const Diagram& d);

// Bicartesian completions of spans, memoised per (top, left).
class CompletionCache {
 public:
  explicit CompletionCache(ExactPtr e) : e_(std::move(e)) {}
  const std::vector<Square>& completions(MorId top, MorId left);
  const ProtoExactStructure& exact() const { return *e_; }

 private:
  ExactPtr e_;
  std::unordered_map<std::uint64_t, std::vector<Square>> memo_;
};

// All diagrams of one shape in E, stored as bit-packed codes in canonical
// (lexicographic) order.
class DiagramFamily {
 public:
  static std::shared_ptr<const DiagramFamily> enumerate(ExactPtr e, Shape shape, ZeroPolicy policy,
                                                        CompletionCache* cache = nullptr);
  static std::shared_ptr<const DiagramFamily> from_diagrams(ExactPtr e, Shape shape, ZeroPolicy policy,
                                                            std::vector<Diagram> diagrams);

  const ProtoExactStructure& exact() const { return *e_; }
  const ExactPtr& exact_ptr() const { return e_; }
  const Shape& shape() const { return shape_; }
  ZeroPolicy policy() const { return policy_; }
  std::size_t size() const { return codes_.size() / words_; }

  void decode(CellId x, Diagram& out) const;
  Diagram diagram(CellId x) const;
  CellId find(const Diagram& d) const;
  std::string describe(CellId x) const { return describe_diagram(*e_, shape_, diagram(x)); }
  // Number of positions holding a zero object.
  std::size_t zero_count(CellId x) const;

  // Assignment order of edges, used by the codec and by isomorphism search.
  const std::vector<std::vector<std::uint32_t>>& incident_edges() const { return incident_; }

 private:
  DiagramFamily(ExactPtr e, Shape shape, ZeroPolicy policy);
  void encode(const Diagram& d, std::uint64_t* out) const;

  ExactPtr e_;
  Shape shape_;
  ZeroPolicy policy_;
  std::vector<std::int32_t> completion_;             // per position: square index or -1
  std::vector<std::vector<std::uint32_t>> incident_;  // per position: edges assigned there
  unsigned obj_bits_ = 0, mor_bits_ = 0;
  std::size_t words_ = 1;
  std::vector<std::uint64_t> codes_;

  friend class DiagramEnumerator;
};

// The groupoid of diagrams E^shape restricted to a family: morphisms are
// families of isomorphisms commuting with every edge.
class DiagramGroupoid : public FiniteGroupoid {
 public:
  explicit DiagramGroupoid(std::shared_ptr<const DiagramFamily> family);
  std::size_t size() const override { return family_->size(); }
  std::uint64_t invariant(std::size_t x) const override;
  void for_each_iso(std::size_t x, std::size_t y, const std::function<bool(const Arrow&)>& visit) const override;
  std::string describe(std::size_t x) const override { return family_->describe(static_cast<CellId>(x)); }
  const DiagramFamily& family() const { return *family_; }
  const std::shared_ptr<const DiagramFamily>& family_ptr() const { return family_; }

  // Isomorphisms out of x that are identities on the `fixed` positions: the
  // number of such families (all land in the family), and how many of them are
  // automorphisms of x.
  struct Relative {
    std::uint64_t families = 1;
    std::uint64_t stabilizer = 1;
  };
  Relative relative_symmetry(CellId x, const std::vector<char>& fixed, std::uint64_t stabilizer_cap = 1 << 20) const;
  bool relatively_isomorphic(CellId x, CellId y, const std::vector<char>& fixed) const;
  // Number of objects an object at position p may be moved to by an isomorphism.
  std::uint64_t iso_choices(std::uint32_t p, ObjId a) const;

 private:
  template <class Accept>
  void search(const Diagram& x, const Diagram& y, const std::vector<char>* fixed, bool automorphisms_only,
              Accept&& accept) const;
  std::shared_ptr<const DiagramFamily> family_;
  IsoClassIndex classes_;
};

}  // namespace sdot::fincat
