#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "knockout/tournament.hpp"

namespace knockout {

/// Hardness reductions from non-seeded instances to seeded ones. The target
/// wins the source instance iff it wins the produced one.

enum class PlayerRole {
  kOriginal,      // member of the source player set V
  kGadgetApex,    // x_i, beats the rest of V_i and loses only to the target in V
  kGadgetMember,  // other member of V_i
  kSeedFiller,    // member of V', the seeded players added by the half reduction
};

struct Provenance {
  PlayerRole role = PlayerRole::kOriginal;
  int gadget = 0;             // i for V_i members and apexes, otherwise 0
  PlayerId source_id = -1;    // original id for kOriginal, otherwise -1
};

struct ReductionOutput {
  TfpInstance instance;
  /// provenance[p] describes new player p. Originals keep their ids.
  std::vector<Provenance> provenance;
};

struct ReductionOptions {
  /// When set, outcomes the construction leaves free and the choice of which
  /// gadget members receive seeds are randomized from this seed; otherwise
  /// free edges go to the lower id and members are taken lowest id first.
  std::optional<std::uint64_t> shuffle_seed;
};

/// s_target = 2^t seeds on 2^t * n players. Gadgets V_1..V_t of sizes
/// n, 2n, ..., 2^(t-1) n follow the originals; x_i is the first id of V_i.
/// Seed ladder: x and x_t; then x_(t-1) and one member of V_t; then x_(t-2),
/// one of V_(t-1) and two of V_t; ...; finally x_1 with 1, 2, ..., 2^(t-2)
/// members of V_2, ..., V_t.
/// Throws std::invalid_argument if the source is seeded or s_target is not a
/// power of two >= 2.
ReductionOutput reduce_to_seeded_constant(const TfpInstance& source, int s_target,
                                          const ReductionOptions& options = {});

/// 2n players: V' = n..2n-1 lose to every original and hold seeds 1..n in id
/// order. Throws std::invalid_argument if the source is seeded.
ReductionOutput reduce_to_seeded_half(const TfpInstance& source,
                                      const ReductionOptions& options = {});

}  // namespace knockout
