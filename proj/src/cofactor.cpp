#include "qtspp/cofactor.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "qtspp/cyclotomic.hpp"
#include "qtspp/errors.hpp"
#include "qtspp/local_series.hpp"
#include "qtspp/matrix.hpp"
#include "qtspp/parallel.hpp"
#include "qtspp/simd/kernels.hpp"

namespace qtspp {

CofactorTable::CofactorTable(const QPoint& qpt, std::vector<FieldVector> rows,
                             std::vector<std::size_t> rescaled)
    : qpt_(qpt), rows_(std::move(rows)), rescaled_(std::move(rescaled)) {
  for (std::size_t n = 1; n <= rows_.size(); ++n) {
    if (rows_[n - 1].size() != n) throw InvalidArgument("cofactor table row has wrong length");
  }
  std::sort(rescaled_.begin(), rescaled_.end());
  rescaled_.erase(std::unique(rescaled_.begin(), rescaled_.end()), rescaled_.end());
  for (auto n : rescaled_) {
    if (n < 1 || n > rows_.size()) throw InvalidArgument("rescaled row outside the table");
  }
}

bool CofactorTable::is_rescaled(std::size_t n) const {
  return std::binary_search(rescaled_.begin(), rescaled_.end(), n);
}

FieldElement CofactorTable::at(std::int64_t n, std::int64_t j) const {
  if (n < 1 || static_cast<std::size_t>(n) > n_max()) {
    throw InvalidArgument("table row " + std::to_string(n) + " outside 1.." +
                          std::to_string(n_max()));
  }
  if (j < 1 || j > n) return FieldElement(0);
  return rows_[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(j - 1)];
}

QPoint make_qpoint(std::int64_t q_int, const PrimeModulus& mod, std::size_t n_max) {
  return QPoint(q_int, mod, n_max);
}

namespace {

DenseMatrix leading_block(const DenseMatrix& a, std::size_t k) {
  DenseMatrix m(k, k, a.modulus());
  for (std::size_t r = 0; r < k; ++r) {
    auto src = a.row(r).first(k);
    std::copy(src.begin(), src.end(), m.row(r).begin());
  }
  return m;
}

}  // namespace

namespace {

// Taylor expansions at q = q0 + t, modulo t^K, of the polynomials making up
// the matrix entries.
class LocalExpansion {
 public:
  LocalExpansion(const QPoint& qpt, std::size_t precision)
      : qpt_(qpt), mod_(qpt.modulus()), k_(precision) {
    powers_.push_back(unit());
  }

  std::size_t precision() const noexcept { return k_; }

  LaurentSeries entry(std::size_t i, std::size_t j) {
    auto inner = qbinom(i + j - 2, i - 1);
    auto second = series_mul(power(1), qbinom(i + j - 1, i), k_, mod_);
    for (std::size_t l = 0; l < k_; ++l) inner[l] = mod_.add(FieldElement(inner[l]), FieldElement(second[l])).value;
    auto v = series_mul(power(i + j - 1), inner, k_, mod_);
    if (i == j) {
      const auto& qi = power(i);
      for (std::size_t l = 0; l < k_; ++l) v[l] = mod_.add(FieldElement(v[l]), FieldElement(qi[l])).value;
      v[0] = mod_.add(FieldElement(v[0]), FieldElement(1)).value;
    }
    if (i == j + 1) v[0] = mod_.sub(FieldElement(v[0]), FieldElement(1)).value;
    return LaurentSeries(0, std::move(v));
  }

 private:
  using Series = std::vector<std::uint32_t>;

  Series unit() const {
    Series s(k_, 0);
    s[0] = 1;
    return s;
  }

  // (q0 + t) * s
  Series times_q(const Series& s) const {
    Series out(k_, 0);
    const FieldElement q0 = qpt_.reduced();
    for (std::size_t l = 0; l < k_; ++l) {
      FieldElement v = mod_.mul(q0, FieldElement(s[l]));
      if (l > 0) v = mod_.add(v, FieldElement(s[l - 1]));
      out[l] = v.value;
    }
    return out;
  }

  const Series& power(std::size_t e) {
    while (powers_.size() <= e) powers_.push_back(times_q(powers_.back()));
    return powers_[e];
  }

  const Series& phi(std::size_t d) {
    if (phi_.size() <= d) phi_.resize(d + 1);
    if (phi_[d].empty()) {
      const auto poly = cyclotomic_poly(d);
      Series acc(k_, 0);
      for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
        acc = times_q(acc);
        acc[0] = mod_.add(FieldElement(acc[0]), mod_.from_int(*it)).value;
      }
      phi_[d] = std::move(acc);
    }
    return phi_[d];
  }

  Series qbinom(std::size_t a, std::size_t b) {
    Series acc = unit();
    if (b > a) return Series(k_, 0);
    for (std::size_t d = 2; d <= a; ++d) {
      if (a / d - (a - b) / d - b / d == 1) acc = series_mul(acc, phi(d), k_, mod_);
    }
    return acc;
  }

  const QPoint& qpt_;
  PrimeModulus mod_;
  std::size_t k_;
  std::vector<Series> powers_;
  std::vector<Series> phi_;
};

// Scales x so its last nonzero entry is 1.
void normalize_last(FieldVector& x, const PrimeModulus& mod) {
  auto it = std::find_if(x.rbegin(), x.rend(), [](FieldElement v) { return !v.is_zero(); });
  if (it == x.rend()) return;
  const FieldElement s = mod.inv(*it);
  for (auto& v : x) v = mod.mul(v, s);
}

// Fast path: kernel of the first n-1 rows over GF(p). Empty if the
// specialized kernel is not a line.
std::optional<CofactorRow> kernel_row(std::size_t n, const OkadaMatrixSlice& a) {
  const auto& mod = a.qpt.modulus();
  if (n == 1) return CofactorRow{FieldVector{FieldElement(1)}, false};
  DenseMatrix rows(n - 1, n, mod);
  for (std::size_t r = 0; r + 1 < n; ++r) {
    auto src = a.entries.row(r).first(n);
    std::copy(src.begin(), src.end(), rows.row(r).begin());
  }
  auto basis = nullspace(std::move(rows));
  if (basis.size() != 1) return std::nullopt;
  const bool pole = basis.front().back().is_zero();
  CofactorRow out{std::move(basis.front()), pole};
  normalize_last(out.values, mod);
  return out;
}

enum class LocalOutcome { ok, imprecise };

// Kernel direction of the local expansion: the t^v coefficients of the
// kernel series, v the least valuation among them.
LocalOutcome local_row(std::size_t n, LocalExpansion& ex, const PrimeModulus& mod, CofactorRow* out) {
  std::vector<std::vector<LaurentSeries>> rows(n - 1, std::vector<LaurentSeries>(n));
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j <= n; ++j) rows[i - 1][j - 1] = ex.entry(i, j);
  std::vector<LaurentSeries> x;
  if (!series_kernel(std::move(rows), n, mod, &x)) return LocalOutcome::imprecise;
  long v = LaurentSeries::kExactPrecision;
  for (const auto& s : x)
    if (!s.is_zero()) v = std::min(v, s.valuation());
  if (v == LaurentSeries::kExactPrecision) return LocalOutcome::imprecise;
  out->values.assign(n, FieldElement(0));
  for (std::size_t j = 0; j < n; ++j) {
    if (x[j].is_zero()) {
      if (x[j].absolute_precision() <= v) return LocalOutcome::imprecise;
      continue;
    }
    if (x[j].valuation() == v) out->values[j] = x[j].coeff(v);
  }
  out->rescaled = out->values.back().is_zero();
  normalize_last(out->values, mod);
  return LocalOutcome::ok;
}

// Slow path through the local expansion at q0; doubles the precision until the
// leading terms are determined.
CofactorRow local_cofactor_row(std::size_t n, const QPoint& qpt) {
  for (std::size_t k = 12; k <= 96; k *= 2) {
    LocalExpansion ex(qpt, k);
    CofactorRow out;
    if (local_row(n, ex, qpt.modulus(), &out) == LocalOutcome::ok) return out;
  }
  throw SingularMatrix("row n = " + std::to_string(n) + " not determined at q = " +
                           std::to_string(qpt.q_int()),
                       n);
}

}  // namespace

CofactorRow cofactor_row(std::size_t n, const OkadaMatrixSlice& a, PoleMode mode) {
  if (n < 1 || n > a.n) throw InvalidArgument("cofactor_row: n outside the matrix slice");
  auto row = kernel_row(n, a);
  if (!row) row = local_cofactor_row(n, a.qpt);
  if (row->rescaled && mode == PoleMode::reject) {
    throw SingularMatrix("B'(" + std::to_string(n) + ", j) has a pole at q = " +
                             std::to_string(a.qpt.q_int()) + " mod " +
                             std::to_string(a.qpt.modulus().p()),
                         n);
  }
  return *std::move(row);
}

FieldVector cofactor_row(std::size_t n, const OkadaMatrixSlice& a) {
  return cofactor_row(n, a, PoleMode::reject).values;
}

FieldVector cofactor_row(std::size_t n, const QPoint& qpt) {
  return cofactor_row(n, okada_matrix(n, qpt));
}

CofactorTable build_table(std::size_t n_max, const QPoint& qpt, std::size_t workers,
                          PoleMode mode) {
  if (n_max < 1) throw InvalidArgument("build_table: n_max must be >= 1");
  const auto a = okada_matrix(n_max, qpt);
  const std::uint32_t p = qpt.modulus().p();
  std::vector<FieldVector> rows(n_max);
  std::vector<char> rescaled(n_max, 0);
  parallel_for(n_max, workers, [&](std::size_t k) {
    const std::size_t n = k + 1;
    auto [x, was_rescaled] = cofactor_row(n, a, mode);
    rescaled[k] = was_rescaled;
    std::vector<std::uint32_t> raw(n);
    for (std::size_t j = 0; j < n; ++j) raw[j] = x[j].value;
    for (std::size_t i = 1; i < n; ++i) {
      if (simd::dot(a.entries.row(i - 1).first(n), raw, p) != 0) {
        throw ResidualMismatch("row n = " + std::to_string(n) + " fails the orthogonality check at i = " +
                               std::to_string(i));
      }
    }
    rows[k] = std::move(x);
  });
  std::vector<std::size_t> rescaled_rows;
  for (std::size_t k = 0; k < n_max; ++k)
    if (rescaled[k]) rescaled_rows.push_back(k + 1);
  return CofactorTable(qpt, std::move(rows), std::move(rescaled_rows));
}

FieldElement det_direct(std::size_t n, const QPoint& qpt) {
  return determinant_elim(okada_matrix(n, qpt).entries);
}

FieldElement det_certified(std::size_t n, const CofactorTable& table) {
  if (n > table.n_max()) throw InvalidArgument("det_certified: table too small");
  const auto& qpt = table.qpt();
  const auto& mod = qpt.modulus();
  const auto a = okada_matrix(n, qpt);
  FieldElement det(1);
  for (std::size_t m = 1; m <= n; ++m) {
    FieldElement s(0);
    for (std::size_t j = 1; j <= m; ++j) s = mod.add(s, mod.mul(table.row(m)[j - 1], a.at(m, j)));
    det = mod.mul(det, s);
  }
  return det;
}

FieldElement cofactor_by_minors(std::size_t n, std::size_t j, const QPoint& qpt) {
  if (n < 1 || j < 1 || j > n) throw InvalidArgument("cofactor_by_minors: need 1 <= j <= n");
  if (n == 1) return FieldElement(1);
  const auto& mod = qpt.modulus();
  const auto a = okada_matrix(n, qpt);
  DenseMatrix minor(n - 1, n - 1, mod);
  for (std::size_t r = 0; r + 1 < n; ++r) {
    std::size_t cc = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (c + 1 == j) continue;
      minor.set(r, cc++, a.entries.at(r, c));
    }
  }
  FieldElement lower = determinant_elim(leading_block(a.entries, n - 1));
  FieldElement value = mod.div(determinant_elim(std::move(minor)), lower);
  return (n + j) % 2 == 0 ? value : mod.neg(value);
}

// ---- files -----------------------------------------------------------------

namespace {

constexpr std::string_view kTextMagic = "qtspp-cofactor-table 1";
constexpr std::array<char, 8> kBinaryMagic = {'Q', 'T', 'S', 'P', 'P', 'C', 'T', '\x01'};

void put_u32(std::ostream& os, std::uint32_t v) {
  std::array<char, 4> b{};
  for (int k = 0; k < 4; ++k) b[k] = static_cast<char>((v >> (8 * k)) & 0xff);
  os.write(b.data(), 4);
}

void put_u64(std::ostream& os, std::uint64_t v) {
  put_u32(os, static_cast<std::uint32_t>(v));
  put_u32(os, static_cast<std::uint32_t>(v >> 32));
}

std::uint32_t get_u32(std::istream& is) {
  std::array<unsigned char, 4> b{};
  if (!is.read(reinterpret_cast<char*>(b.data()), 4)) throw FormatError("truncated binary table");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint64_t get_u64(std::istream& is) {
  std::uint64_t lo = get_u32(is);
  return lo | (static_cast<std::uint64_t>(get_u32(is)) << 32);
}

struct Header {
  std::int64_t q_int;
  std::uint32_t p;
  std::size_t n_max;
  std::vector<std::size_t> rescaled;
};

void check_rescaled(const Header& h) {
  for (std::size_t k = 0; k < h.rescaled.size(); ++k) {
    const auto n = h.rescaled[k];
    if (n < 1 || n > h.n_max || (k > 0 && n <= h.rescaled[k - 1])) {
      throw FormatError("rescaled rows must be increasing and inside 1..n_max");
    }
  }
}

// Checks a triple against the expected (n, j) sequence and range.
void check_triple(const Header& h, std::size_t n, std::size_t j, std::uint64_t value,
                  std::size_t expect_n, std::size_t expect_j) {
  if (n != expect_n || j != expect_j) {
    throw FormatError("expected entry (" + std::to_string(expect_n) + ", " +
                      std::to_string(expect_j) + "), found (" + std::to_string(n) + ", " +
                      std::to_string(j) + ")");
  }
  if (value >= h.p) throw FormatError("value " + std::to_string(value) + " is not reduced mod p");
}

CofactorTable assemble(const Header& h, std::vector<FieldVector> rows) {
  PrimeModulus mod(h.p);
  if (h.q_int < 1) throw FormatError("q_int must be >= 1");
  return CofactorTable(make_qpoint(h.q_int, mod, h.n_max), std::move(rows), h.rescaled);
}

}  // namespace

void write_table_text(std::ostream& os, const CofactorTable& table) {
  os << kTextMagic << '\n'
     << "q_int " << table.qpt().q_int() << '\n'
     << "p " << table.modulus().p() << '\n'
     << "n_max " << table.n_max() << '\n'
     << "rescaled " << table.rescaled_rows().size();
  for (auto n : table.rescaled_rows()) os << ' ' << n;
  os << '\n';
  for (std::size_t n = 1; n <= table.n_max(); ++n) {
    for (std::size_t j = 1; j <= n; ++j) os << n << ' ' << j << ' ' << table.row(n)[j - 1].value << '\n';
  }
}

void write_table_binary(std::ostream& os, const CofactorTable& table) {
  os.write(kBinaryMagic.data(), kBinaryMagic.size());
  put_u64(os, static_cast<std::uint64_t>(table.qpt().q_int()));
  put_u32(os, table.modulus().p());
  put_u32(os, static_cast<std::uint32_t>(table.n_max()));
  put_u32(os, static_cast<std::uint32_t>(table.rescaled_rows().size()));
  for (auto n : table.rescaled_rows()) put_u32(os, static_cast<std::uint32_t>(n));
  const std::size_t nn = table.n_max();
  for (std::size_t n = 1; n <= nn; ++n)
    for (std::size_t j = 1; j <= n; ++j) put_u32(os, static_cast<std::uint32_t>(n));
  for (std::size_t n = 1; n <= nn; ++n)
    for (std::size_t j = 1; j <= n; ++j) put_u32(os, static_cast<std::uint32_t>(j));
  for (std::size_t n = 1; n <= nn; ++n)
    for (std::size_t j = 1; j <= n; ++j) put_u32(os, table.row(n)[j - 1].value);
}

CofactorTable read_table_text(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kTextMagic) throw FormatError("missing table header line");
  Header h{};
  auto field = [&](const char* name, auto& out) {
    std::string key;
    if (!(is >> key >> out) || key != name) throw FormatError(std::string("expected field ") + name);
  };
  field("q_int", h.q_int);
  field("p", h.p);
  field("n_max", h.n_max);
  std::size_t rescaled_count = 0;
  field("rescaled", rescaled_count);
  if (rescaled_count > h.n_max) throw FormatError("too many rescaled rows");
  h.rescaled.resize(rescaled_count);
  for (auto& n : h.rescaled)
    if (!(is >> n)) throw FormatError("truncated rescaled row list");
  check_rescaled(h);
  std::vector<FieldVector> rows(h.n_max);
  for (std::size_t n = 1; n <= h.n_max; ++n) {
    rows[n - 1].resize(n);
    for (std::size_t j = 1; j <= n; ++j) {
      std::size_t rn = 0, rj = 0;
      std::uint64_t v = 0;
      if (!(is >> rn >> rj >> v)) throw FormatError("truncated text table");
      check_triple(h, rn, rj, v, n, j);
      rows[n - 1][j - 1] = FieldElement(static_cast<std::uint32_t>(v));
    }
  }
  std::string rest;
  if (is >> rest) throw FormatError("trailing data after table");
  return assemble(h, std::move(rows));
}

CofactorTable read_table_binary(std::istream& is) {
  std::array<char, 8> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kBinaryMagic) {
    throw FormatError("missing binary table magic");
  }
  Header h{};
  h.q_int = static_cast<std::int64_t>(get_u64(is));
  h.p = get_u32(is);
  h.n_max = get_u32(is);
  const std::uint32_t rescaled_count = get_u32(is);
  if (rescaled_count > h.n_max) throw FormatError("too many rescaled rows");
  h.rescaled.resize(rescaled_count);
  for (auto& n : h.rescaled) n = get_u32(is);
  check_rescaled(h);
  const std::size_t count = h.n_max * (h.n_max + 1) / 2;
  std::vector<std::uint32_t> ns(count), js(count), vs(count);
  for (auto& v : ns) v = get_u32(is);
  for (auto& v : js) v = get_u32(is);
  for (auto& v : vs) v = get_u32(is);
  if (is.peek() != std::char_traits<char>::eof()) throw FormatError("trailing data after table");
  std::vector<FieldVector> rows(h.n_max);
  std::size_t k = 0;
  for (std::size_t n = 1; n <= h.n_max; ++n) {
    rows[n - 1].resize(n);
    for (std::size_t j = 1; j <= n; ++j, ++k) {
      check_triple(h, ns[k], js[k], vs[k], n, j);
      rows[n - 1][j - 1] = FieldElement(vs[k]);
    }
  }
  return assemble(h, std::move(rows));
}

CofactorTable read_table(std::istream& is) {
  if (is.peek() == kBinaryMagic[0]) return read_table_binary(is);
  return read_table_text(is);
}

}  // namespace qtspp
