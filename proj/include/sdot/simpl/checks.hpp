#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sdot/simpl/simplicial.hpp"

namespace sdot::simpl {

std::vector<std::pair<CellId, CellId>> fiber_product(const std::vector<CellId>& f, const std::vector<CellId>& g);

enum class Family { all, lower, upper };
const char* to_string(Family f);
Family parse_family(const std::string& s);

// Diagonal (i,j) of the (n+1)-gon.
struct SubdivisionSpec {
  int n = 0, i = 0, j = 0;
  bool valid() const { return 0 <= i && i < j && j <= n && j - i >= 2 && !(i == 0 && j == n); }
  bool in(Family f) const { return f == Family::all || (f == Family::lower ? i == 0 : j == n); }
  // {i..j} and {0..i, j..n}
  std::vector<std::vector<int>> pieces() const;
};

std::vector<SubdivisionSpec> subdivisions(int n, Family f);

struct Witness {
  // no_preimage: `target` is a fiber-product tuple outside the image.
  // not_injective: `cells` share an image; in groupoid mode they are also not
  // isomorphic relative to the pieces.
  // extra_automorphism: `cells[0]` has a non-identity automorphism fixing the pieces.
  std::string kind;
  int n = 0;
  std::vector<CellId> cells;
  std::vector<CellId> target;
  std::string detail;
};

struct Verdict {
  std::string name;
  int n = 0;
  std::vector<std::vector<int>> pieces;
  bool groupoid = false;  // fibers judged up to relative isomorphism
  bool pass = true;
  bool strict_pass = true;
  std::uint64_t source_size = 0, target_size = 0, image_size = 0;
  std::vector<Witness> witnesses;
};

struct CheckReport {
  std::string condition;
  std::string mode;  // "strict" or "groupoid"
  int from = 0, to = -1;
  std::vector<Verdict> verdicts;
  bool pass() const;
  bool strict_pass() const;
};

// The map X_n -> X_{|P_1|-1} ×_{X_*} … ×_{X_*} X_{|P_m|-1}, restricting to
// each piece; consecutive pieces are glued along their intersection. With an
// iso structure the fibers are required to be contractible groupoids.
Verdict subdivision_check(const TruncSimplicialSet& x, int n, const std::vector<std::vector<int>>& pieces,
                          bool use_iso = true);
bool verify_witness(const TruncSimplicialSet& x, const Verdict& v, const Witness& w);

CheckReport segal_check(const TruncSimplicialSet& x, int N);
CheckReport two_segal_check(const TruncSimplicialSet& x, int N, Family family);
// The five triangulations of the pentagon at n = 4.
CheckReport pentagon_audit(const TruncSimplicialSet& x);

}  // namespace sdot::simpl
