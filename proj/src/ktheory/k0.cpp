#include "sdot/ktheory/k0.hpp"

#include <set>

#include "sdot/waldhausen/grid.hpp"

namespace sdot::ktheory {

using fincat::Diagram;

bool K0Presentation::well_formed() const {
  if (relations.cols() != static_cast<Eigen::Index>(generators.size())) return false;
  const Eigen::Index zero_from = relations.rows() - static_cast<Eigen::Index>(zero_classes);
  for (Eigen::Index r = zero_from; r < relations.rows(); ++r) {
    int ones = 0;
    for (Eigen::Index c = 0; c < relations.cols(); ++c) {
      if (relations(r, c) == 1) ++ones;
      else if (relations(r, c) != 0) return false;
    }
    if (ones != 1) return false;
  }
  return true;
}

K0Presentation k0_presentation(fincat::ExactPtr e, bool per_cell) {
  const auto& c = e->category();
  K0Presentation p;
  const auto classes = fincat::iso_classes(c);
  p.class_of = classes.class_of;
  for (auto rep : classes.representatives) {
    p.representatives.push_back(rep);
    p.generators.push_back(c.object_label(rep));
  }
  const auto g = waldhausen::s_groupoid(e, 2);
  const auto& fam = g->family();
  const auto& shape = fam.shape();
  const auto p01 = shape.find({0, 1}), p02 = shape.find({0, 2}), p12 = shape.find({1, 2});
  p.s2_cells = fam.size();
  std::vector<std::size_t> cells;
  if (per_cell) {
    for (std::size_t x = 0; x < fam.size(); ++x) cells.push_back(x);
    p.s2_classes = fincat::groupoid_classes(*g).size();
  } else {
    const auto gc = fincat::groupoid_classes(*g);
    cells = gc.representatives;
    p.s2_classes = gc.size();
  }
  std::set<ObjId> zero_cls;
  for (ObjId z : e->zeros()) zero_cls.insert(p.class_of[z]);
  p.zero_classes = zero_cls.size();
  const auto n = static_cast<Eigen::Index>(p.generators.size());
  p.relations = IntMatrix::Zero(static_cast<Eigen::Index>(cells.size() + zero_cls.size()), n);
  Diagram d;
  Eigen::Index row = 0;
  for (std::size_t x : cells) {
    fam.decode(static_cast<CellId>(x), d);
    p.relations(row, p.class_of[d.objects[p02]]) += 1;
    p.relations(row, p.class_of[d.objects[p01]]) -= 1;
    p.relations(row, p.class_of[d.objects[p12]]) -= 1;
    ++row;
  }
  for (ObjId cls : zero_cls) p.relations(row++, cls) = 1;
  return p;
}

AbelianGroupInvariants cokernel(const SmithForm& f, Eigen::Index columns) {
  AbelianGroupInvariants g;
  g.rank = static_cast<int>(columns) - static_cast<int>(f.diagonal.size());
  for (auto d : f.diagonal)
    if (d > 1) g.torsion.push_back(d);
  return g;
}

K0Result k0(fincat::ExactPtr e, bool per_cell) {
  K0Result r;
  r.presentation = k0_presentation(std::move(e), per_cell);
  r.snf = smith_normal_form(r.presentation.relations);
  r.certificate_ok = r.snf.verify(r.presentation.relations);
  r.group = cokernel(r.snf, r.presentation.relations.cols());
  return r;
}

nlohmann::json k0_to_json(const K0Result& r) {
  nlohmann::json rel = nlohmann::json::array();
  const auto& m = r.presentation.relations;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<std::int64_t> row(m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) row[j] = m(i, j);
    rel.push_back(row);
  }
  return {{"generators", r.presentation.generators},
          {"relations", rel},
          {"rank", r.group.rank},
          {"torsion", r.group.torsion},
          {"smith_diagonal", r.snf.diagonal},
          {"certificate_ok", r.certificate_ok},
          {"s2_cells", r.presentation.s2_cells},
          {"s2_classes", r.presentation.s2_classes}};
}

}  // namespace sdot::ktheory
