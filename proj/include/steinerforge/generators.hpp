#pragma once

#include <random>

#include "steinerforge/digraph.hpp"

namespace steinerforge {

using Rng = std::mt19937_64;

/// Each ordered pair becomes an arc independently with probability arc_prob.
Digraph random_digraph(int n, double arc_prob, Rng& rng);

/// One arc per unordered pair, direction by coin flip.
Digraph random_tournament(int n, Rng& rng);

/// Each unordered pair gets one of uv, vu, or both, uniformly.
Digraph random_semicomplete(int n, Rng& rng);

/// Bidirected closure of a random connected graph (random spanning tree
/// plus extra edges with probability edge_prob).
Digraph random_connected_symmetric(int n, Rng& rng, double edge_prob = 0.35);

/// Superposes random directed cycles, rejecting any that would create a
/// parallel arc, until the digraph is connected. Balanced by construction,
/// hence Eulerian.
Digraph random_eulerian(int n, Rng& rng);

}  // namespace steinerforge
