#pragma once

#include <functional>
#include <vector>

#include "toric/geometry/fan.hpp"
#include "toric/geometry/polytope.hpp"

namespace toric {

// u -> <slope,u> + offset
struct AffineForm {
  QVec slope;
  LogRational offset;

  LogRational operator()(const QVec& u) const { return LogRational(dot(slope, u)) + offset; }
  LogRational operator()(const std::vector<LogRational>& u) const;
  double evaluate(const double* u) const;
};

bool operator==(const AffineForm& a, const AffineForm& b);
bool operator<(const AffineForm& a, const AffineForm& b);

// Concave function u -> min_i <m_i,u> + c_i.
class ConcavePA {
 public:
  ConcavePA() = default;
  ConcavePA(std::size_t dim, std::vector<AffineForm> forms);
  static ConcavePA constant(std::size_t dim, const LogRational& c);
  static ConcavePA linear(const QVec& m);

  std::size_t dim() const { return dim_; }
  const std::vector<AffineForm>& forms() const { return forms_; }
  bool is_rational() const;

  LogRational operator()(const QVec& u) const;
  LogRational operator()(const std::vector<LogRational>& u) const;
  double evaluate(const double* u) const;

  // Forms active on a full-dimensional region of R^n, deduplicated and sorted (rational data).
  ConcavePA canonical() const;
  // Forms active on a region of full relative dimension in P, one per restriction to aff(P).
  ConcavePA canonical_on(const RationalPolytope& p) const;
  // Region of form k inside P: P ∩ { l_k <= l_j for all j }.
  RationalPolytope region(std::size_t k, const RationalPolytope& p) const;
  // x -> f(x + shift) - c
  ConcavePA twisted(const QVec& shift, const LogRational& c) const;

  friend ConcavePA operator+(const ConcavePA& a, const ConcavePA& b);
  friend ConcavePA operator*(const Rational& s, const ConcavePA& a);

 private:
  std::size_t dim_ = 0;
  std::vector<AffineForm> forms_;
};

bool operator==(const ConcavePA& a, const ConcavePA& b);

// A concave function on a polytope (the representation of roof functions and duals).
struct ConcaveOnPolytope {
  RationalPolytope domain;
  ConcavePA f;
};

// Cell of a polyhedral complex with rational data: { u : <u,a_j> >= b_j } carrying an affine form.
struct PACell {
  std::vector<QHalfspace> constraints;
  QVec slope;
  Rational offset;
};

// Continuous piecewise affine function on a complete rational polyhedral complex.
class GeneralPA {
 public:
  // Validates full-dimensional cells, disjoint interiors, continuity and complete cover.
  static GeneralPA make(std::size_t dim, std::vector<PACell> cells);
  // Trusted constructor for complexes produced internally (drops lower-dimensional cells).
  static GeneralPA make_unchecked(std::size_t dim, std::vector<PACell> cells);
  static GeneralPA from_concave(const ConcavePA& f);
  static GeneralPA from_support_function(const VirtualSupportFunction& psi);

  std::size_t dim() const { return dim_; }
  const std::vector<PACell>& cells() const { return cells_; }

  Rational operator()(const QVec& u) const;
  double evaluate(const double* u) const;

  friend GeneralPA operator+(const GeneralPA& a, const GeneralPA& b);
  friend GeneralPA operator-(const GeneralPA& a, const GeneralPA& b);
  friend GeneralPA operator*(const Rational& s, const GeneralPA& a);

 private:
  std::size_t dim_ = 0;
  std::vector<PACell> cells_;
};

// Function given by an evaluator with a declared conic recession function.
struct OracleFunction {
  std::size_t dim = 0;
  std::function<double(const double*)> eval;
  GeneralPA recession;
  bool concave = true;
};

bool cell_is_full_dimensional(const std::vector<QHalfspace>& cs, std::size_t dim);
std::optional<QVec> cell_interior_point(const std::vector<QHalfspace>& cs, std::size_t dim);

}  // namespace toric
