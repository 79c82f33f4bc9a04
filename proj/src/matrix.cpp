#include "pplab/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace pplab {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged rows");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

bool IntMatrix::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    IntMatrix m(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < o.cols_; ++j) {
                const Int& y = o.at(k, j);
                if (y != 0) m.at(i, j) += x * y;
            }
        }
    return m;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    IntMatrix m(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
    return m;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix diff shape mismatch");
    IntMatrix m(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

IntMatrix IntMatrix::hcat(const IntMatrix& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("hcat row mismatch");
    IntMatrix m(rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols_; ++j) m.at(i, cols_ + j) = o.at(i, j);
    }
    return m;
}

IntMatrix IntMatrix::vcat(const IntMatrix& o) const {
    if (cols_ != o.cols_) throw std::invalid_argument("vcat col mismatch");
    IntMatrix m(rows_ + o.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
    for (int i = 0; i < o.rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(rows_ + i, j) = o.at(i, j);
    return m;
}

IntMatrix IntMatrix::column(int c) const {
    IntMatrix m(rows_, 1);
    for (int i = 0; i < rows_; ++i) m.at(i, 0) = at(i, c);
    return m;
}

IntMatrix IntMatrix::columns(const std::vector<int>& idx) const {
    IntMatrix m(rows_, static_cast<int>(idx.size()));
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < rows_; ++i) m.at(i, j) = at(i, idx[j]);
    return m;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << "[";
        for (int j = 0; j < cols_; ++j) os << at(i, j) << (j + 1 < cols_ ? "," : "");
        os << "]";
    }
    os << "]";
    return os.str();
}

namespace {

struct SnfState {
    IntMatrix d, u, u_inv, v, v_inv;

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < d.cols(); ++c) std::swap(d.at(i, c), d.at(j, c));
        for (int c = 0; c < u.cols(); ++c) std::swap(u.at(i, c), u.at(j, c));
        // u_inv tracks the inverse: swapping rows of U swaps columns of U^-1.
        for (int r = 0; r < u_inv.rows(); ++r) std::swap(u_inv.at(r, i), u_inv.at(r, j));
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < d.rows(); ++r) std::swap(d.at(r, i), d.at(r, j));
        for (int r = 0; r < v.rows(); ++r) std::swap(v.at(r, i), v.at(r, j));
        for (int c = 0; c < v_inv.cols(); ++c) std::swap(v_inv.at(i, c), v_inv.at(j, c));
    }
    // row i += f * row j
    void add_row(int i, int j, const Int& f) {
        if (f == 0) return;
        for (int c = 0; c < d.cols(); ++c) d.at(i, c) += f * d.at(j, c);
        for (int c = 0; c < u.cols(); ++c) u.at(i, c) += f * u.at(j, c);
        for (int r = 0; r < u_inv.rows(); ++r) u_inv.at(r, j) -= f * u_inv.at(r, i);
    }
    // col i += f * col j
    void add_col(int i, int j, const Int& f) {
        if (f == 0) return;
        for (int r = 0; r < d.rows(); ++r) d.at(r, i) += f * d.at(r, j);
        for (int r = 0; r < v.rows(); ++r) v.at(r, i) += f * v.at(r, j);
        for (int c = 0; c < v_inv.cols(); ++c) v_inv.at(j, c) -= f * v_inv.at(i, c);
    }
    void negate_row(int i) {
        for (int c = 0; c < d.cols(); ++c) d.at(i, c) = -d.at(i, c);
        for (int c = 0; c < u.cols(); ++c) u.at(i, c) = -u.at(i, c);
        for (int r = 0; r < u_inv.rows(); ++r) u_inv.at(r, i) = -u_inv.at(r, i);
    }
};

} // namespace

SNFResult smith_normal_form(const IntMatrix& a) {
    const int m = a.rows(), n = a.cols();
    SnfState s{a, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n),
               IntMatrix::identity(n)};

    const int nmin = std::min(m, n);
    for (int t = 0; t < nmin; ++t) {
        // Find the entry of least nonzero magnitude in the trailing block.
        for (;;) {
            int pr = -1, pc = -1;
            Int best = 0;
            for (int i = t; i < m; ++i)
                for (int j = t; j < n; ++j) {
                    const Int& x = s.d.at(i, j);
                    if (x == 0) continue;
                    Int ax = abs(x);
                    if (pr < 0 || ax < best) {
                        best = ax;
                        pr = i;
                        pc = j;
                    }
                }
            if (pr < 0) break; // trailing block zero, done
            s.swap_rows(t, pr);
            s.swap_cols(t, pc);

            bool clean = true;
            for (int i = t + 1; i < m; ++i) {
                Int q = s.d.at(i, t) / s.d.at(t, t);
                s.add_row(i, t, -q);
                if (s.d.at(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < n; ++j) {
                Int q = s.d.at(t, j) / s.d.at(t, t);
                s.add_col(j, t, -q);
                if (s.d.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Pivot now lone; enforce divisibility of the trailing block.
            bool divides_all = true;
            for (int i = t + 1; i < m && divides_all; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (s.d.at(i, j) % s.d.at(t, t) != 0) {
                        s.add_row(t, i, 1);
                        divides_all = false;
                        break;
                    }
            if (divides_all) break;
        }
        if (s.d.at(t, t) < 0) s.negate_row(t);
        if (s.d.at(t, t) == 0) break; // everything after is zero too
    }

    SNFResult r;
    r.d = s.d;
    r.u = s.u;
    r.u_inv = s.u_inv;
    r.v = s.v;
    r.v_inv = s.v_inv;
    for (int t = 0; t < nmin; ++t) {
        r.diagonal.push_back(s.d.at(t, t));
        if (s.d.at(t, t) != 0) r.nonzero_count = t + 1;
    }
    if (!r.verify(a)) throw std::logic_error("SNF self-check failed");
    return r;
}

bool SNFResult::verify(const IntMatrix& a) const {
    if (u * a * v != d) return false;
    if ((u * u_inv) != IntMatrix::identity(u.rows())) return false;
    if ((v * v_inv) != IntMatrix::identity(v.rows())) return false;
    for (int i = 0; i < d.rows(); ++i)
        for (int j = 0; j < d.cols(); ++j)
            if (i != j && d.at(i, j) != 0) return false;
    for (size_t i = 0; i + 1 < diagonal.size(); ++i) {
        if (diagonal[i] == 0 && diagonal[i + 1] != 0) return false;
        if (diagonal[i] != 0 && diagonal[i + 1] % diagonal[i] != 0) return false;
    }
    return true;
}

IntMatrix kernel_basis(const IntMatrix& a) {
    SNFResult s = smith_normal_form(a);
    // A * (V e_j) = U^-1 D e_j = 0 exactly when d_j = 0 (or j beyond diag).
    std::vector<int> zero_cols;
    for (int j = 0; j < a.cols(); ++j) {
        bool is_zero = j >= static_cast<int>(s.diagonal.size()) || s.diagonal[j] == 0;
        if (is_zero) zero_cols.push_back(j);
    }
    return s.v.columns(zero_cols);
}

std::optional<IntMatrix> solve_linear(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve_linear shape mismatch");
    SNFResult s = smith_normal_form(a);
    IntMatrix c = s.u * b; // D y = c
    IntMatrix y(a.cols(), b.cols());
    for (int j = 0; j < b.cols(); ++j) {
        for (int i = 0; i < a.rows(); ++i) {
            Int di = (i < std::min(a.rows(), a.cols())) ? s.d.at(i, i) : Int(0);
            if (di == 0) {
                if (c.at(i, j) != 0) return std::nullopt;
            } else {
                if (c.at(i, j) % di != 0) return std::nullopt;
                if (i < a.cols()) y.at(i, j) = c.at(i, j) / di;
            }
        }
    }
    return s.v * y;
}

bool columns_in_span(const IntMatrix& a, const IntMatrix& b) {
    if (b.cols() == 0 || b.is_zero()) return true;
    return solve_linear(a, b).has_value();
}

} // namespace pplab
