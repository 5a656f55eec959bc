#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sdot/sigma/sigma_set.hpp"

namespace sdot::sigma {

// A finite Σ-set presented by its nondegenerate cells: every other cell is a
// degeneracy of a lower cell or the image of an augmentation cell.
struct Probe {
  struct Route {
    enum Kind : std::uint8_t { generator, degeneracy, augmentation } kind = generator;
    std::uint32_t index = 0;  // generator number, augmentation cell
    int axis = 0, i = 0;      // degeneracy s_i on `axis`
    CellId source = kNone;    // degeneracy source cell
  };
  struct Generator {
    SigmaObj obj;
    CellId cell = kNone;
  };

  SigmaSet set;
  std::vector<Generator> generators;  // augmentation cells first, then by degree
  std::vector<std::vector<Route>> routes;  // [index(a,b)][cell]
  // Vertex sequences of each component of a cell, when the probe is built from
  // standard simplices: empty otherwise.
  std::vector<int> ks;
  std::function<std::vector<std::vector<int>>(const SigmaObj&, CellId)> vertices;
  std::function<CellId(const SigmaObj&, const std::vector<std::vector<int>>&)> locate;

  int max_degree() const;
  std::size_t count_at(const SigmaObj& o) const;
};

using ProbePtr = std::shared_ptr<const Probe>;

// Splits the cells of `a` into generators and routes.
Probe make_probe(SigmaSet a);

// P applied to the standard k-simplex, truncated at `degree` (default k+1).
ProbePtr p_delta(int k, int degree = -1);
// Cells at α are poset maps [p(α)] -> [k_1]×…×[k_n], acting diagonally.
ProbePtr p_iterated_delta(const std::vector<int>& ks, int degree = -1);
// Levelwise product of p_delta(k_i), each truncated at `degree`.
ProbePtr p_delta_product(const std::vector<int>& ks, int degree = -1);

// Cell maps between finite Σ-sets, one table per Σ-object (augmentation first).
struct SigmaMap {
  std::vector<CellId> aug;
  std::vector<std::vector<CellId>> cells;  // [index(a,b)]
};

struct MapCheck {
  bool commutes = true;
  bool bijective = true;
  std::vector<std::string> problems;
  bool ok() const { return commutes && bijective; }
};
// Operator compatibility of f: a -> b up to the smaller bound.
MapCheck check_sigma_map(const SigmaSet& a, const SigmaSet& b, const SigmaMap& f, bool require_bijection);

struct ProductIsoReport {
  std::vector<int> ks;
  int degree = 0;
  std::uint64_t objects_checked = 0;
  std::uint64_t cells = 0;
  MapCheck forward, backward;
  bool inverse = true;  // the two maps compose to identities
  bool pass() const { return forward.ok() && backward.ok() && inverse; }
};
// p_iterated_delta(ks) ≅ ∏ p_delta(k_i) by (poset map) ↦ (its projections).
ProductIsoReport product_iso_check(const std::vector<int>& ks, int degree = -1);

// Maps probe -> X, stored as generator images in lexicographic order.
class MappingSpace {
 public:
  MappingSpace(ProbePtr probe, SigmaPtr target);
  const Probe& probe() const { return *probe_; }
  const ProbePtr& probe_ptr() const { return probe_; }
  const SigmaSet& target() const { return *target_; }
  const SigmaPtr& target_ptr() const { return target_; }
  std::size_t size() const { return maps_.size(); }
  const std::vector<CellId>& images(std::size_t m) const { return maps_[m]; }
  CellId find(const std::vector<CellId>& images) const;
  // Images of every probe cell.
  SigmaMap extend(const std::vector<CellId>& images) const;
  SigmaMap extend(std::size_t m) const { return extend(maps_[m]); }
  // Full map -> generator images.
  std::vector<CellId> restrict_to_generators(const SigmaMap& f) const;
  // Every map is re-checked against all operators of the probe.
  MapCheck consistency() const;
  std::uint64_t candidates_tried() const { return tried_; }

 private:
  void enumerate();
  ProbePtr probe_;
  SigmaPtr target_;
  std::vector<std::vector<CellId>> maps_;
  std::uint64_t tried_ = 0;
};

// Precomposition along a probe map phi: A' -> A, sending X-valued maps on A to
// maps on A'.
std::vector<CellId> precompose(const MappingSpace& from, const MappingSpace& to, const SigmaMap& phi, std::size_t m);

// The map PΔ[k'] -> PΔ[k] (componentwise for products) induced by monotone
// maps [k'_t] -> [k_t].
SigmaMap probe_map(const Probe& from, const Probe& to, const std::vector<std::vector<int>>& maps);

}  // namespace sdot::sigma
