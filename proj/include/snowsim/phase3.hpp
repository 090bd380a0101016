#pragma once

#include <cstdint>
#include <vector>

#include "snowsim/graph_state.hpp"
#include "snowsim/phase2.hpp"
#include "snowsim/rng.hpp"

namespace snowsim::phase3 {

/// Square lattice of snowball sites with open boundaries. snowball_size is
/// the per-site vertex count the statistical bond model assumes.
struct LatticeSpec {
  int width = 2;
  int height = 2;
  double p_s = 0.5;
  int64_t snowball_size = 4;
};

/// Probability that two adjacent snowballs end up bonded when each commits a
/// quarter of its nodes, floor(size/4) attempt pairs, to that neighbor.
double bond_probability(int64_t snowball_size, double p_s);

/// Presence flags for every interior lattice adjacency. Horizontal bonds
/// connect (x, y)-(x+1, y) and are stored row-major as y * (width-1) + x;
/// vertical bonds connect (x, y)-(x, y+1) stored as y * width + x.
struct BondMap {
  int width = 0;
  int height = 0;
  std::vector<char> horizontal;
  std::vector<char> vertical;

  bool h_at(int x, int y) const;
  bool v_at(int x, int y) const;
  int64_t present_count() const;
  int64_t bond_count() const;
};

/// Draws every bond independently at the closed-form probability, horizontal
/// bonds first, both blocks row-major.
BondMap generate_bonds(const LatticeSpec& spec, RandomStream& rng);

struct PercolationReport {
  double largest_cluster_fraction = 0.0;
  bool crosses_left_right = false;
  bool crosses_top_bottom = false;
};

/// Union-find cluster decomposition of the sites under the present bonds.
/// A crossing cluster touches both opposite boundaries.
PercolationReport percolation_report(const BondMap& bonds);

/// Full graph-level assembly of a small snowball grid.
struct AssembledLattice {
  GraphState graph;
  /// Bond present iff some fusion succeeded and both junction endpoints are
  /// still connected to their site roots (lowest original id per site) once
  /// every attempt has fired.
  BondMap bonds;
  /// Bond present iff some fusion succeeded, regardless of what the failed
  /// attempts did to the surrounding snowballs.
  BondMap raw_bonds;
};

/// Fires quarter allocations between all adjacent sites of a grid of at most
/// 4x4 snowballs and returns the joint graph plus both bond readings. Every
/// pair fires (parallel burst); surplus successes between the same two sites
/// are kept, since the lattice target is not a tree. balls[y][x] is the site
/// at column x, row y; rows must have equal lengths.
AssembledLattice assemble_small_lattice(std::vector<std::vector<phase2::Snowball>> balls,
                                        double p_s, RandomStream& rng);

}  // namespace snowsim::phase3
