#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cellplan/facility.hpp"
#include "cellplan/knapsack.hpp"
#include "cellplan/scheduling.hpp"

namespace cellplan {
namespace oracles {

// Brute-force reference solvers, deliberately naive and kept apart from the
// branch-and-bound path so each side can certify the other. Exponential by
// design; every routine guards its input size.

// Exact 0/1 knapsack by dynamic programming over capacity. Weights must be
// integral; profits may be real. Returns the optimum and one optimal
// subset (ascending indices).
std::pair<double, std::vector<int>> knapsack_dp(const KnapsackInstance& instance);

// Exact knapsack LP relaxation by profit/weight ratio greedy with at most
// one fractional item.
double fractional_greedy_knapsack_lp(const KnapsackInstance& instance);

// Exact shortest Hamiltonian cycle length by bitmask dynamic programming;
// n <= 16.
double held_karp(const std::vector<std::vector<double>>& dist);

// Exact minimal makespan by depth-first start-time enumeration with
// feasibility and bound pruning; nullopt when no feasible schedule exists
// within the horizon. Guards: <= 12 real jobs, horizon <= 64.
std::optional<int> enumerate_rcpsp(const RcpspInstance& instance);

// Exact minimal makespan over all per-machine job permutations;
// jobs <= 4, machines <= 3.
double enumerate_jobshop(const JobShopInstance& instance);

// Exact minimal total cost by enumerating open-site subsets and
// per-site adjacent breakpoint segments, solving the residual transport LP;
// nullopt when demand cannot be met. Guards: <= 3 sites, <= 5 customers,
// <= 5 breakpoints.
std::optional<double> enumerate_facility(const FacilityInstance& instance);

}  // namespace oracles
}  // namespace cellplan
