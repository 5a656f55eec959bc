#pragma once

#include <memory>
#include <optional>

#include "sdot/fincat/diagram.hpp"
#include "sdot/simpl/simplicial.hpp"

namespace sdot::waldhausen {

using fincat::Diagram;
using fincat::DiagramFamily;
using fincat::ExactPtr;
using fincat::ProtoExactStructure;
using fincat::TieBreak;
using fincat::ZeroPolicy;

// Chains A_1 ↣ … ↣ A_k as diagrams over chain_shape(k, mono).
std::shared_ptr<const DiagramFamily> seq_disc(ExactPtr e, int k, ZeroPolicy policy = ZeroPolicy::all);

// i > 0 drops A_i; i = 0 replaces A_j by the chosen quotient A_j/A_1.
Diagram seq_face(const ProtoExactStructure& e, const Diagram& c, int i, TieBreak tie = TieBreak::least);
// s_0 prepends the canonical zero, s_i doubles A_i.
Diagram seq_degeneracy(const ProtoExactStructure& e, const Diagram& c, int i);

struct SeqComplex {
  std::vector<std::shared_ptr<const DiagramFamily>> levels;
  simpl::TruncSimplicialSet simplicial;
};

// Levels 0..N of Seq^disc with the face and degeneracy formulas above. This is
// not expected to be simplicial.
SeqComplex seq_complex(ExactPtr e, int N, TieBreak tie = TieBreak::least, ZeroPolicy policy = ZeroPolicy::all);

struct SeqWitness {
  TieBreak tie = TieBreak::least;
  // Length-3 instances of d0 d0 = d0 d1, all of which hold when `certificate_length3` is set.
  bool certificate_length3 = false;
  std::uint64_t length3_checked = 0;
  std::uint64_t length3_equal = 0;
  // First strict failure of some identity d0 d0 = d0 d1, searched up to length 4.
  bool strict_failure = false;
  int length = 0;
  Diagram cell, lhs, rhs;
  std::vector<MorId> iso;  // lhs -> rhs, componentwise
  std::string describe(const ProtoExactStructure& e) const;
};

SeqWitness seq_nonsimpliciality_witness(ExactPtr e, TieBreak tie = TieBreak::least, int max_length = 4);
// Recomputes both sides and checks the isomorphism, or recounts the certificate.
bool verify_seq_witness(ExactPtr e, const SeqWitness& w);

}  // namespace sdot::waldhausen
