// oracle.hpp -- ground-truth explicit-state semantics per instance size:
// attractor solving, bounded reachability, and the qualitative MDP check.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>

#include "model.hpp"

namespace regliv {

struct ExplicitInstance {
  uint32_t length = 0;
  std::vector<Word> configs; // lex-sorted, indices dense
  std::map<Word, uint32_t> index;
  std::vector<std::vector<uint32_t>> edges1, edges2; // successor lists
  std::vector<uint8_t> owner;                        // 1 or 2
  std::vector<uint8_t> is_initial, is_final;
};

inline constexpr size_t kDefaultConfigCap = 2'000'000;

ExplicitInstance expand(const GameInstance& g, uint32_t length,
                        size_t cap = kDefaultConfigCap);

// per-config: can Player 2 force reaching a final config (backward fixpoint)
std::vector<uint8_t> attractor(const ExplicitInstance& e);

// BFS from the initial configs over both edge sets
std::vector<uint8_t> reachable_set(const ExplicitInstance& e);

struct MdpResult {
  std::vector<uint8_t> almost_sure;
  std::vector<double> value; // minimal reachability probability
  bool converged = false;
  uint32_t iterations = 0;
};

// Value iteration for the minimal probability of reaching F (Scheduler
// minimises at Player-1 configs, uniform expectation at Player-2 configs),
// combined with a graph-qualitative confirmation that no scheduler can reach
// a config from which F is unreachable.
MdpResult mdp_check(const ExplicitInstance& e, double eps = 1e-9,
                    uint32_t max_iter = 1'000'000);

// Per-model cache for expansions and reachability; safe for concurrent use.
class OracleCache {
public:
  explicit OracleCache(const GameInstance& g) : game_(g) {}

  const ExplicitInstance& instance(uint32_t length, size_t cap = kDefaultConfigCap);
  bool reachable(const Word& w, size_t cap = kDefaultConfigCap);
  const std::vector<uint8_t>& reachable_flags(uint32_t length,
                                              size_t cap = kDefaultConfigCap);

  const GameInstance& game() const { return game_; }

private:
  const GameInstance& game_;
  std::mutex mu_;
  std::map<uint32_t, std::unique_ptr<ExplicitInstance>> instances_;
  std::map<uint32_t, std::vector<uint8_t>> reach_;
};

} // namespace regliv
