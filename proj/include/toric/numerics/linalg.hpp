#pragma once

#include <optional>
#include <vector>

#include "toric/numerics/rational.hpp"

namespace toric {

std::size_t rank(QMat a);
std::size_t rank(std::vector<std::vector<double>> a);
Rational determinant(QMat a);
std::optional<QMat> inverse(QMat a);
std::optional<std::vector<std::vector<double>>> inverse(std::vector<std::vector<double>> a);
// Rational basis of {x : a x = 0}; `cols` gives the ambient dimension when a is empty.
QMat nullspace(const QMat& a, std::size_t cols);
// Basis of ker(a) ∩ Z^cols (a rational; rows scaled to integers internally).
QMat integer_kernel_basis(const QMat& a, std::size_t cols);
// Lattice basis of span(dirs) ∩ Z^dim.
QMat lattice_basis_of_span(const QMat& dirs, std::size_t dim);
// Coordinates y with basis^T y = v where basis rows are independent and v lies in their span.
std::optional<QVec> coordinates_in(const QMat& basis, const QVec& v);
// Row indices of a maximal independent subset, greedily in order.
std::vector<std::size_t> independent_rows(const QMat& a);

}  // namespace toric
