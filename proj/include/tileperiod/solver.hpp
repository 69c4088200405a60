#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "tileperiod/core.hpp"
#include "tileperiod/search.hpp"

namespace tileperiod {

struct SolverOptions {
    // Transfer-graph node cap.
    std::size_t node_cap = 10'000'000;
    // Placement budget for each backtracking search.
    std::uint64_t search_budget = 200'000'000;
    // Worker count for the per-period pool.
    unsigned jobs = 1;
};

// k consecutive rows of a horizontally p-periodic configuration, bottom row first.
struct Band {
    int width = 0;
    std::vector<std::vector<TileId>> rows;

    auto operator<=>(const Band&) const = default;
};

// Nodes are the violation-free bands of width p; an edge u -> v means v is u
// shifted up by one row and the (k+1)-row union is violation-free.
struct TransferGraph {
    int width = 0;
    int band_height = 1;
    std::vector<Band> nodes;
    std::vector<std::vector<std::uint32_t>> succ;

    std::size_t edge_count() const;
};

// A walk of bands: `prefix` followed by `cycle` repeated forever upward.
struct BandWalk {
    std::vector<Band> prefix;
    std::vector<Band> cycle;

    // Rows of the walk with the cycle unrolled `repeats` times, as a cylinder
    // (wrap_x only).
    RegionAssignment unroll(int repeats = 1) const;
};

enum class PeriodKind { horizontal, total };

struct PeriodReport {
    int period = 0;
    PeriodKind kind = PeriodKind::horizontal;
    bool eigen = false;
    std::optional<RegionAssignment> torus;
    std::optional<BandWalk> walk;
};

int band_height_for(const TilingSystem& sys);

// Proper divisors d of p such that p/d is prime. A configuration invariant
// under some proper divisor shift is invariant under one of these.
std::vector<int> maximal_proper_divisors(int p);

TransferGraph build_transfer_graph(const TilingSystem& sys, int p, const SolverOptions& options = {});

// Restriction to nodes lying on some bi-infinite walk.
TransferGraph live_subgraph(const TransferGraph& g);

std::optional<PeriodReport> horizontal_period_exists(const TilingSystem& sys, int p,
                                                     const SolverOptions& options = {});

// Report for p when p is a horizontal eigenperiod, nullopt otherwise.
std::optional<PeriodReport> horizontal_eigenperiod(const TilingSystem& sys, int p,
                                                   const SolverOptions& options = {});

std::vector<PeriodReport> horizontal_eigenperiods(const TilingSystem& sys, int pmax,
                                                  const SolverOptions& options = {});

std::optional<PeriodReport> total_period_exists(const TilingSystem& sys, int p, const SolverOptions& options = {});

std::optional<PeriodReport> total_eigenperiod(const TilingSystem& sys, int p, const SolverOptions& options = {});

std::vector<PeriodReport> total_eigenperiods(const TilingSystem& sys, int pmax, const SolverOptions& options = {});

std::set<int> periods_of(const std::vector<PeriodReport>& reports);

// Whether the torus has no proper-divisor total period.
bool torus_is_eigen(const RegionAssignment& torus);

// Whether some row of the region is not q-periodic for every maximal proper
// divisor q of p = region width.
bool rows_are_eigen(const RegionAssignment& region);

// Exhaustive search over p'-wide cylinders for every p' <= p. A cylinder
// certifies p' when its bottom and top bands each repeat inside it (so it
// extends to a bi-infinite configuration) and its rows pass the divisor
// filter. With hmax, cylinders up to min(hmax, |T|^(r p' k)) rows are
// enumerated one by one. Without it, walks are folded into (band, mask) states
// so the search is exact. Independent of the transfer-graph code.
std::set<int> brute_force_oracle(const TilingSystem& sys, int p, std::optional<int> hmax,
                                 std::uint64_t budget = 500'000'000);

} // namespace tileperiod
