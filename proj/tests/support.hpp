#pragma once

#include <random>
#include <string>
#include <vector>

#include "carnot/polynomial.hpp"

namespace carnot::testing {

std::string read_data(const std::string& name);

/// Point with coordinates p/q, |p| <= 9, 1 <= q <= 4; with `sparsity` the
/// probability that a coordinate is 0.
Point random_point(const GradedAlgebra& alg, std::mt19937_64& rng, double sparsity = 0);

/// Point with coordinates k/8, |k| <= 8.
Point unit_point(const GradedAlgebra& alg, std::mt19937_64& rng);

/// Polynomial with `terms` random terms of total degree <= `degree`.
Polynomial random_polynomial(const GradedAlgebra& alg, std::mt19937_64& rng, int terms, int degree);

/// Rank of the gradients of fs at p.
std::size_t gradient_rank(const std::vector<Polynomial>& fs, const Point& p);

/// Whether the rows of a and b span the same space.
bool same_span(const RationalMatrix& a, const RationalMatrix& b);

RationalMatrix gradient_matrix(const std::vector<Polynomial>& fs, const Point& p);

}  // namespace carnot::testing
