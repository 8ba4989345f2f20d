#include "sortreduce/lattice_tools.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "sortreduce/errors.hpp"
#include "sortreduce/primality.hpp"

namespace sortreduce {
namespace {

bool is_separator(char c) { return std::isspace(static_cast<unsigned char>(c)) || c == ','; }

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string word;
  auto flush = [&] {
    if (!word.empty()) tokens.push_back(std::move(word));
    word.clear();
  };
  for (char c : text) {
    if (c == '[' || c == ']') {
      flush();
      tokens.emplace_back(1, c);
    } else if (is_separator(c)) {
      flush();
    } else {
      word.push_back(c);
    }
  }
  flush();
  return tokens;
}

void check_rectangular(const Matrix& m) {
  if (m.empty()) throw FormatError("matrix has no rows");
  for (const auto& row : m) {
    if (row.empty()) throw FormatError("matrix has an empty row");
    if (row.size() != m.front().size()) throw FormatError("ragged rows: row lengths differ");
  }
}

Matrix parse_bracketed(std::vector<std::string> tokens) {
  // the outer pair is optional but must be complete when present
  const auto opens = std::count(tokens.begin(), tokens.end(), std::string("["));
  const auto closes = std::count(tokens.begin(), tokens.end(), std::string("]"));
  if (opens != closes) throw FormatError("unbalanced brackets");
  if (tokens.size() >= 2 && tokens[0] == "[" && tokens[1] == "[" && tokens.back() == "]") {
    tokens.erase(tokens.begin());
    tokens.pop_back();
  }

  Matrix m;
  bool in_row = false;
  for (const std::string& t : tokens) {
    if (t == "[") {
      if (in_row) throw FormatError("nested brackets inside a row");
      in_row = true;
      m.emplace_back();
    } else if (t == "]") {
      if (!in_row) throw FormatError("unbalanced ']'");
      in_row = false;
    } else {
      if (!in_row) throw FormatError("entry '" + t + "' outside a row");
      m.back().push_back(parse_integer_literal(t));
    }
  }
  if (in_row) throw FormatError("unterminated row");
  return m;
}

Matrix parse_plain(std::string_view text) {
  Matrix m;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::vector<BigInt> row;
    for (const std::string& t : tokenize(line)) row.push_back(parse_integer_literal(t));
    if (!row.empty()) m.push_back(std::move(row));
  }
  return m;
}

// Fraction-free elimination over the first `cols` columns; returns rank and
// leaves the echelon form in m. swaps counts row exchanges.
std::size_t bareiss(Matrix& m, std::size_t cols, std::size_t& swaps) {
  const std::size_t rows = m.size();
  BigInt prev = 1;
  std::size_t r = 0;
  swaps = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(m[p], m[r]);
      ++swaps;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < m[i].size(); ++j) {
        m[i][j] = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

}  // namespace

Matrix parse_matrix(std::string_view text) {
  Matrix m = text.find('[') != std::string_view::npos ? parse_bracketed(tokenize(text)) : parse_plain(text);
  check_rectangular(m);
  return m;
}

LatticeBasis parse_basis(std::string_view text) {
  LatticeBasis b{parse_matrix(text), std::nullopt};
  if (b.rows.size() != b.rows.front().size()) throw FormatError("basis must be square");
  return b;
}

std::string format_matrix(const Matrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i > 0) out += "\n";
    out += "[";
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (j > 0) out += " ";
      out += m[i][j].get_str();
    }
    out += "]";
  }
  out += "]\n";
  return out;
}

Matrix to_matrix(const std::vector<IntVector>& rows) {
  Matrix m;
  m.reserve(rows.size());
  for (const IntVector& r : rows) m.push_back(r.to_values());
  return m;
}

BigInt determinant(const Matrix& input) {
  const std::size_t n = input.size();
  for (const auto& row : input) {
    if (row.size() != n) throw DimensionError("determinant of a non-square matrix");
  }
  if (n == 0) return 1;
  Matrix m = input;
  std::size_t swaps = 0;
  if (bareiss(m, n, swaps) < n) return 0;
  BigInt det = m[n - 1][n - 1];
  return swaps % 2 ? BigInt(-det) : det;
}

Adjugate adjugate(const Matrix& input) {
  const std::size_t n = input.size();
  for (const auto& row : input) {
    if (row.size() != n) throw DimensionError("adjugate of a non-square matrix");
  }
  // [B | I], reduced fraction-free to [d I | d B^-1] with d the determinant of the row-permuted B
  Matrix m(n, std::vector<BigInt>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(input[i].begin(), input[i].end(), m[i].begin());
    m[i][n + i] = 1;
  }
  BigInt prev = 1;
  std::size_t swaps = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) throw SingularError("matrix is singular");
    if (p != k) {
      std::swap(m[p], m[k]);
      ++swaps;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        m[i][j] = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  // every earlier pivot row was rescaled at each step, so the left block is now prev * I
  Adjugate out;
  const bool odd = swaps % 2 == 1;
  out.det = odd ? BigInt(-prev) : prev;
  out.adj.assign(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.adj[i][j] = odd ? BigInt(-m[i][n + j]) : m[i][n + j];
  }
  return out;
}

std::size_t integer_rank(const Matrix& input) {
  if (input.empty()) return 0;
  Matrix m = input;
  std::size_t swaps = 0;
  return bareiss(m, m.front().size(), swaps);
}

std::size_t rank_mod(const Matrix& input, const BigInt& P) {
  if (input.empty()) return 0;
  Matrix m = input;
  for (auto& row : m) {
    for (auto& x : row) x = canonical_mod(x, P);
  }
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  std::size_t r = 0;
  BigInt inv;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    if (mpz_invert(inv.get_mpz_t(), m[r][c].get_mpz_t(), P.get_mpz_t()) == 0) {
      throw ConfigError("rank modulo a composite: pivot is not invertible");
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      const BigInt f = canonical_mod(m[i][c] * inv, P);
      for (std::size_t j = c; j < cols; ++j) m[i][j] = canonical_mod(m[i][j] - f * m[r][j], P);
    }
    ++r;
  }
  return r;
}

Matrix dual_matrix(const LatticeBasis& basis) {
  const Adjugate a = adjugate(basis.rows);
  const std::size_t n = basis.rows.size();
  // P (B^-1)^T = (|det| / det) adj^T
  Matrix d(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i][j] = a.det < 0 ? BigInt(-a.adj[j][i]) : a.adj[j][i];
  }
  return d;
}

static std::optional<BigInt> small_prime_factor(const BigInt& n) {
  if (is_probable_prime(n)) return n;
  for (unsigned long p = 2; p < 100000; ++p) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return BigInt(p);
  }
  return std::nullopt;
}

Extraction extract_dual_codeword(const LatticeBasis& basis) {
  const std::size_t n = basis.rows.size();
  if (n == 0) throw DimensionError("empty basis");
  for (const auto& row : basis.rows) {
    if (row.size() != n) throw DimensionError("basis must be square");
  }
  const Adjugate a = adjugate(basis.rows);
  const BigInt P = abs(a.det);

  // B adj = det I, checked exactly
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      BigInt s = 0;
      for (std::size_t k = 0; k < n; ++k) s += basis.rows[i][k] * a.adj[k][j];
      if (s != (i == j ? a.det : BigInt(0))) throw std::logic_error("adjugate identity failed");
    }
  }
  if (P < 2) throw NotCodimensionOneError(0, "determinant is +-1: the dual vanishes modulo P");

  Matrix reduced(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      reduced[i][j] = canonical_mod(a.det < 0 ? BigInt(-a.adj[j][i]) : a.adj[j][i], P);
    }
  }

  auto first_nonzero = [](const std::vector<BigInt>& row) -> std::optional<std::size_t> {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] != 0) return j;
    }
    return std::nullopt;
  };

  std::optional<std::size_t> rep;
  for (std::size_t i = 0; i < n; ++i) {
    auto j = first_nonzero(reduced[i]);
    if (!j) continue;
    if (!rep) {
      rep = i;
      continue;
    }
    auto jr = *first_nonzero(reduced[*rep]);
    if (*j < jr || (*j == jr && reduced[i][*j] < reduced[*rep][jr])) rep = i;
  }
  const bool prime = is_probable_prime(P);
  auto fail = [&](const std::string& why) -> NotCodimensionOneError {
    std::size_t rank = 0;
    try {
      rank = rank_mod(reduced, P);
    } catch (const ConfigError&) {
      // composite P: report the rank modulo a small prime factor when one is found
      const auto p = small_prime_factor(P);
      rank = p ? rank_mod(reduced, *p) : (rep ? 2 : 0);
    }
    return NotCodimensionOneError(rank, why + " (rank mod P = " + std::to_string(rank) + ")");
  };
  if (!rep) throw fail("dual matrix vanishes modulo P");

  const auto& r = reduced[*rep];
  const std::size_t j0 = *first_nonzero(r);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (canonical_mod(reduced[i][j] * r[j0] - r[j] * reduced[i][j0], P) != 0) {
        throw fail("reduced dual rows are not collinear");
      }
    }
  }

  // collinear rows with a common factor g with P only cut out an index-P/g lattice
  BigInt g = P;
  for (const BigInt& x : r) g = gcd(g, x);
  if (g != 1) throw fail("codeword shares the factor " + to_decimal(g) + " with P");

  Extraction out{DualCodeword(r, Modulus(P)), a.det, prime, reduced};
  for (const auto& row : basis.rows) {
    BigInt s = 0;
    for (std::size_t j = 0; j < n; ++j) s += row[j] * r[j];
    if (canonical_mod(s, P) != 0) throw std::logic_error("basis row is not orthogonal to the extracted codeword");
  }
  return out;
}

Real gaussian_heuristic(std::size_t d, const BigInt& det) {
  if (d == 0) throw DimensionError("dimension must be positive");
  if (det < 1) throw RegimeError("determinant must be positive");
  using namespace boost::multiprecision;
  const Real dd = static_cast<unsigned long>(d);
  const Real lg = lgamma(Real(dd / 2 + 1));
  return exp(Real((lg + ln(det)) / dd)) / sqrt(boost::math::constants::pi<Real>());
}

bool verify_membership(const IntVector& w, const DualCodeword& v) { return pi(w, v) == 0; }

bool is_basis(const std::vector<IntVector>& vectors, const BigInt& P) {
  if (vectors.empty()) return false;
  for (const IntVector& v : vectors) {
    if (v.dim() != vectors.size()) return false;
  }
  return abs(determinant(to_matrix(vectors))) == P;
}

Real orthogonality_defect(const std::vector<IntVector>& vectors, const BigInt& P) {
  if (!is_basis(vectors, P)) throw BasisError("vectors do not form a basis of co-volume P");
  Real prod = 1;
  for (const IntVector& v : vectors) prod *= boost::multiprecision::sqrt(to_real(v.norm2()));
  return prod / to_real(P);
}

DualityCheck check_duality(const LatticeBasis& basis, const BigInt& P, std::span<const BigInt> codeword,
                           const Matrix& dual) {
  const std::size_t n = basis.rows.size();
  DualityCheck c;
  c.cube_pairing = true;
  for (const auto& x : basis.rows) {
    for (std::size_t i = 0; i < n; ++i) {
      // <x, P e_i>_P = (x . P e_i) / P
      BigInt num = x[i] * P;
      if (!mpz_divisible_p(num.get_mpz_t(), P.get_mpz_t()) || num / P != x[i]) c.cube_pairing = false;
    }
  }
  c.codeword_pairing = codeword.size() == n;
  for (const auto& x : basis.rows) {
    if (!c.codeword_pairing) break;
    BigInt s = 0;
    for (std::size_t j = 0; j < n; ++j) s += x[j] * codeword[j];
    if (!mpz_divisible_p(s.get_mpz_t(), P.get_mpz_t())) c.codeword_pairing = false;
  }
  // D integral and equal to P (B^-1)^T exactly: B D^T = P I
  c.dual_integral = dual.size() == n;
  for (std::size_t i = 0; i < n && c.dual_integral; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      BigInt s = 0;
      for (std::size_t k = 0; k < n; ++k) s += basis.rows[i][k] * dual[j][k];
      if (s != (i == j ? P : BigInt(0))) {
        c.dual_integral = false;
        break;
      }
    }
  }
  return c;
}

DualityCheck verify_duality_facts(const LatticeBasis& basis) {
  const Extraction e = extract_dual_codeword(basis);
  return check_duality(basis, e.codeword.P(), e.codeword.entries(), dual_matrix(basis));
}

}  // namespace sortreduce
