#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

namespace pplab {

using Int = boost::multiprecision::cpp_int;

// Dense integer matrix with arbitrary-precision entries. SNF intermediate
// entries can explode even on small inputs, so everything is cpp_int.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static IntMatrix identity(int n);
    static IntMatrix zero(int rows, int cols) { return IntMatrix(rows, cols); }
    static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const Int& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    bool operator==(const IntMatrix& o) const = default;
    bool is_zero() const;

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix transpose() const;

    // Horizontal concatenation [this | o].
    IntMatrix hcat(const IntMatrix& o) const;
    // Vertical concatenation [this ; o].
    IntMatrix vcat(const IntMatrix& o) const;
    IntMatrix column(int c) const;
    IntMatrix columns(const std::vector<int>& idx) const;

    std::string to_string() const;

private:
    int rows_, cols_;
    std::vector<Int> a_;
};

// Smith normal form: U*A*V = D with U, V unimodular and D diagonal with
// d1 | d2 | ... Inverses are tracked alongside so callers can move between
// the original and the normal coordinates without solving.
struct SNFResult {
    IntMatrix d;
    IntMatrix u, u_inv;
    IntMatrix v, v_inv;
    std::vector<Int> diagonal; // nonneg, divisibility chain, zeros trailing
    int nonzero_count = 0;     // number of nonzero diagonal entries

    // Recheck U*A*V == D (used by test mode and the engine-invariants suite).
    bool verify(const IntMatrix& a) const;
};

SNFResult smith_normal_form(const IntMatrix& a);

// Basis of the kernel lattice {x : A x = 0}; columns of the result.
IntMatrix kernel_basis(const IntMatrix& a);

// One integral solution of A x = b, if any.
std::optional<IntMatrix> solve_linear(const IntMatrix& a, const IntMatrix& b);

// Does every column of B lie in the column span (over Z) of A?
bool columns_in_span(const IntMatrix& a, const IntMatrix& b);

} // namespace pplab
