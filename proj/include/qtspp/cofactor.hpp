#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qtspp/field.hpp"
#include "qtspp/okada.hpp"

namespace qtspp {

/// Normalized last-row cofactors B'(n, j) for 1 <= j <= n <= n_max at one
/// (q, p) pair. Reads outside the triangle return 0.
class CofactorTable {
 public:
  /// rows[n-1] holds B'(n, 1..n). No identity checks are made here; use
  /// build_table for verified construction. `rescaled` lists the rows stored
  /// projectively (see PoleMode).
  CofactorTable(const QPoint& qpt, std::vector<FieldVector> rows,
                std::vector<std::size_t> rescaled = {});

  std::size_t n_max() const noexcept { return rows_.size(); }
  const QPoint& qpt() const noexcept { return qpt_; }
  const PrimeModulus& modulus() const noexcept { return qpt_.modulus(); }

  /// Zero-extended accessor: 0 for j < 1 or j > n. n must be in [1, n_max].
  FieldElement at(std::int64_t n, std::int64_t j) const;
  const FieldVector& row(std::size_t n) const { return rows_.at(n - 1); }
  /// Overwrites one value (fault injection in tests and negative controls).
  void set(std::size_t n, std::size_t j, FieldElement v) { rows_.at(n - 1).at(j - 1) = v; }
  std::size_t value_count() const noexcept { return n_max() * (n_max() + 1) / 2; }
  /// Sorted row indices n whose values are a rescaling of B'(n, .).
  const std::vector<std::size_t>& rescaled_rows() const noexcept { return rescaled_; }
  bool is_rescaled(std::size_t n) const;

  friend bool operator==(const CofactorTable& a, const CofactorTable& b) {
    return a.qpt_.q_int() == b.qpt_.q_int() && a.modulus() == b.modulus() && a.rows_ == b.rows_ &&
           a.rescaled_ == b.rescaled_;
  }

 private:
  QPoint qpt_;
  std::vector<FieldVector> rows_;
  std::vector<std::size_t> rescaled_;
};

/// What to do when B'(n, .) has a pole at the q-point (the leading
/// (n-1)-minor vanishes faster than the other cofactors).
/// reject: throw SingularMatrix. rescale: store the leading coefficient of
/// (q - q0)^v B'(n, .) instead, scaled so its last nonzero entry is 1. The
/// Soichi relations and any recurrence that only shifts j still hold for such
/// a row; the Normalization does not.
enum class PoleMode { reject, rescale };

struct CofactorRow {
  FieldVector values;
  bool rescaled = false;
};

/// QPoint with a power table sized for cofactor tables and equation systems
/// up to n_max.
QPoint make_qpoint(std::int64_t q_int, const PrimeModulus& mod, std::size_t n_max);

/// x with x[n] = 1 and sum_j x[j] a(i,j) = 0 for 1 <= i < n (0-indexed output).
/// When the first n-1 rows do not pin x down at this q-point, x is taken as
/// the value at q0 of the rational solution, found through a local expansion
/// in q - q0. Throws SingularMatrix with index n if that value has a pole.
FieldVector cofactor_row(std::size_t n, const QPoint& qpt);
FieldVector cofactor_row(std::size_t n, const OkadaMatrixSlice& a);
CofactorRow cofactor_row(std::size_t n, const OkadaMatrixSlice& a, PoleMode mode);

/// All rows up to n_max; each row's residuals are checked before acceptance
/// (ResidualMismatch on failure). Rows are independent jobs spread over
/// `workers` threads.
CofactorTable build_table(std::size_t n_max, const QPoint& qpt, std::size_t workers = 1,
                          PoleMode mode = PoleMode::reject);

/// det of the n x n Okada matrix by elimination.
FieldElement det_direct(std::size_t n, const QPoint& qpt);

/// prod_{m=1}^n sum_j B'(m,j) a(m,j).
FieldElement det_certified(std::size_t n, const CofactorTable& table);

/// (-1)^{n+j} det(minor without row n, column j) / det_{n-1}. Oracle scale only.
FieldElement cofactor_by_minors(std::size_t n, std::size_t j, const QPoint& qpt);

// Table files: a header (q_int, p, n_max, rescaled rows) followed by the (n, j, value)
// triples in (n, j) order. Text form is one decimal triple per line; binary
// form is little-endian, with the n, j and value columns stored one after the
// other.
void write_table_text(std::ostream& os, const CofactorTable& table);
void write_table_binary(std::ostream& os, const CofactorTable& table);
/// Both throw FormatError on malformed input.
CofactorTable read_table_text(std::istream& is);
CofactorTable read_table_binary(std::istream& is);
/// Picks the reader by the leading magic bytes.
CofactorTable read_table(std::istream& is);

}  // namespace qtspp
