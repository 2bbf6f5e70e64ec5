#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace hecke {

/// Binary quadratic form a x^2 + b x y + c y^2.
struct Form {
  std::int64_t a = 0, b = 0, c = 0;

  std::int64_t discriminant() const { return b * b - 4 * a * c; }
  bool is_reduced() const;
  bool operator==(const Form&) const = default;
};

/// Reduce a positive definite form to the unique reduced form in its class.
Form reduce(Form f);

/// Class group of discriminant -D with its multiplication table.
struct FieldData {
  std::uint64_t D = 0;
  std::vector<Form> forms;  // forms[0] is the principal form
  std::size_t h = 0;
  std::vector<std::uint32_t> table;  // table[i*h+j] = index of forms[i] * forms[j]
  int w = 2;
  std::vector<std::uint64_t> invariant_factors;  // d1 | d2 | ...; empty for the trivial group

  std::size_t mul(std::size_t i, std::size_t j) const { return table[i * h + j]; }
  std::size_t inverse(std::size_t i) const;
  std::size_t power(std::size_t i, std::uint64_t k) const;
  std::size_t order(std::size_t i) const;
  /// Index of a reduced form of this discriminant; throws DomainError if absent.
  std::size_t index_of(const Form& f) const;
};

/// Character of the class group. Values are exp(2 pi i * angle[k] / h).
struct HeckeCharacter {
  std::vector<std::int64_t> angle;  // numerators modulo h, exact
  std::uint64_t denom = 1;          // = h
  std::vector<std::complex<double>> values;
  bool is_complex = false;
  int n_psi = 2;
  std::size_t conjugate_index = 0;
  bool representative = true;  // first member of its {psi, conj psi} orbit
};

/// Empty string when -D is a fundamental discriminant with 3 <= D <= 1e6, otherwise the failed condition.
std::string discriminant_problem(std::int64_t D);

/// All reduced forms of discriminant -D, ordered by (a, |b|), positive b first.
std::vector<Form> reduced_forms(std::int64_t D);

/// Composition followed by reduction. Both forms must have discriminant -field.D.
Form compose(const Form& f1, const Form& f2, const FieldData& field);
Form compose(const Form& f1, const Form& f2);

/// Builds forms, verifies the group axioms and computes invariant factors.
FieldData build_field(std::int64_t D);

/// All h characters, principal first.
std::vector<HeckeCharacter> characters(const FieldData& field);

/// Kronecker symbol (a/n) for n >= 1.
int kronecker(std::int64_t a, std::uint64_t n);

/// (-D/n).
int kronecker_chi(const FieldData& field, std::uint64_t n);

}  // namespace hecke
