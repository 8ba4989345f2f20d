#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sortreduce/bigint.hpp"
#include "sortreduce/int_vector.hpp"
#include "sortreduce/projection.hpp"

namespace sortreduce {

using Matrix = std::vector<std::vector<BigInt>>;

struct LatticeBasis {
  Matrix rows;
  std::optional<BigInt> det_abs;

  std::size_t dim() const { return rows.size(); }
};

/// Rows in bracketed form ("[[1 0][3 7]]", outer brackets optional, commas
/// allowed as separators) or one whitespace-separated row per line. Entries
/// may use the integer literal forms of parse_integer_literal. FormatError on
/// ragged rows, bad tokens or an empty matrix.
Matrix parse_matrix(std::string_view text);
/// parse_matrix plus a squareness check (FormatError otherwise).
LatticeBasis parse_basis(std::string_view text);
/// Bracketed form, one row per line: "[[1 0]\n[3 7]]\n".
std::string format_matrix(const Matrix& m);

Matrix to_matrix(const std::vector<IntVector>& rows);

/// Exact determinant by fraction-free elimination; 0 when singular.
BigInt determinant(const Matrix& m);

struct Adjugate {
  Matrix adj;   // B adj = det I
  BigInt det;
};
/// Adjugate via fraction-free Gauss-Jordan on [B | I]. SingularError when det = 0.
Adjugate adjugate(const Matrix& m);

/// Rank over the rationals.
std::size_t integer_rank(const Matrix& m);
/// Rank over Z_P for prime P.
std::size_t rank_mod(const Matrix& m, const BigInt& P);

struct Extraction {
  DualCodeword codeword;
  BigInt det;        // signed determinant of the basis
  bool prime = false;
  Matrix dual_mod;   // P (B^-1)^T reduced mod P
};
/// Computes P (B^-1)^T from the adjugate, reduces it mod P and returns its one
/// nonzero row direction. The representative is the reduced row whose first
/// nonzero entry is smallest, left unscaled. SingularError for det = 0,
/// NotCodimensionOneError when the reduced rows do not span a rank-1 space.
Extraction extract_dual_codeword(const LatticeBasis& basis);

/// Gamma(d/2 + 1)^(1/d) / sqrt(pi) * det^(1/d).
Real gaussian_heuristic(std::size_t d, const BigInt& det);

bool verify_membership(const IntVector& w, const DualCodeword& v);

/// |det(vectors)| == P.
bool is_basis(const std::vector<IntVector>& vectors, const BigInt& P);
/// (product of lengths) / P. BasisError when the vectors are not a basis.
Real orthogonality_defect(const std::vector<IntVector>& vectors, const BigInt& P);

struct DualityCheck {
  bool cube_pairing = false;      // <x, P e_i>_P = x_i for every basis row x
  bool codeword_pairing = false;  // every basis row pairs to an integer with the codeword
  bool dual_integral = false;     // D = P (B^-1)^T is an integer matrix
  bool all() const { return cube_pairing && codeword_pairing && dual_integral; }
};
/// Checks the duality facts for a basis against a claimed codeword and dual
/// matrix D (rows of P (B^-1)^T, before reduction).
DualityCheck check_duality(const LatticeBasis& basis, const BigInt& P, std::span<const BigInt> codeword,
                           const Matrix& dual);
/// Extracts and checks in one step.
DualityCheck verify_duality_facts(const LatticeBasis& basis);
/// D = P (B^-1)^T with P = |det B|, exactly.
Matrix dual_matrix(const LatticeBasis& basis);

}  // namespace sortreduce
