#include "linalg.hpp"

#include <algorithm>

#include "error.hpp"

namespace zk {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool IntMatrix::is_zero() const {
    for (const Int& x : a_)
        if (x != 0) return false;
    return true;
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw_internal("matrix product shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < o.cols_; ++j) {
                const Int& y = o.at(k, j);
                if (y != 0) r.at(i, j) += x * y;
            }
        }
    return r;
}

std::vector<Int> IntMatrix::mul_vec(const std::vector<Int>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw_internal("matrix-vector shape mismatch");
    std::vector<Int> r(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != 0 && x[j] != 0) r[i] += at(i, j) * x[j];
    return r;
}

namespace {

// Work state keeping U * M * V = A as row/column operations are applied.
struct SNFWork {
    IntMatrix a, u, u_inv, v, v_inv;

    void swap_rows(int r1, int r2) {
        if (r1 == r2) return;
        for (int j = 0; j < a.cols(); ++j) std::swap(a.at(r1, j), a.at(r2, j));
        for (int j = 0; j < u.cols(); ++j) std::swap(u.at(r1, j), u.at(r2, j));
        for (int i = 0; i < u_inv.rows(); ++i) std::swap(u_inv.at(i, r1), u_inv.at(i, r2));
    }
    void swap_cols(int c1, int c2) {
        if (c1 == c2) return;
        for (int i = 0; i < a.rows(); ++i) std::swap(a.at(i, c1), a.at(i, c2));
        for (int i = 0; i < v.rows(); ++i) std::swap(v.at(i, c1), v.at(i, c2));
        for (int j = 0; j < v_inv.cols(); ++j) std::swap(v_inv.at(c1, j), v_inv.at(c2, j));
    }
    // row dst += t * row src
    void add_row(int dst, int src, const Int& t) {
        if (t == 0) return;
        for (int j = 0; j < a.cols(); ++j) a.at(dst, j) += t * a.at(src, j);
        for (int j = 0; j < u.cols(); ++j) u.at(dst, j) += t * u.at(src, j);
        for (int i = 0; i < u_inv.rows(); ++i) u_inv.at(i, src) -= t * u_inv.at(i, dst);
    }
    // col dst += t * col src
    void add_col(int dst, int src, const Int& t) {
        if (t == 0) return;
        for (int i = 0; i < a.rows(); ++i) a.at(i, dst) += t * a.at(i, src);
        for (int i = 0; i < v.rows(); ++i) v.at(i, dst) += t * v.at(i, src);
        for (int j = 0; j < v_inv.cols(); ++j) v_inv.at(src, j) -= t * v_inv.at(dst, j);
    }
    void negate_row(int r) {
        for (int j = 0; j < a.cols(); ++j) a.at(r, j) = -a.at(r, j);
        for (int j = 0; j < u.cols(); ++j) u.at(r, j) = -u.at(r, j);
        for (int i = 0; i < u_inv.rows(); ++i) u_inv.at(i, r) = -u_inv.at(i, r);
    }
};

}  // namespace

SNFResult smith_normal_form(const IntMatrix& m) {
    SNFWork w;
    w.a = m;
    w.u = IntMatrix::identity(m.rows());
    w.u_inv = IntMatrix::identity(m.rows());
    w.v = IntMatrix::identity(m.cols());
    w.v_inv = IntMatrix::identity(m.cols());

    int limit = std::min(m.rows(), m.cols());
    std::vector<Int> invariants;

    for (int t = 0; t < limit; ++t) {
        // Smallest-magnitude nonzero pivot, ties by lowest row then column.
        auto find_pivot = [&]() -> std::pair<int, int> {
            int pr = -1, pc = -1;
            for (int i = t; i < w.a.rows(); ++i)
                for (int j = t; j < w.a.cols(); ++j) {
                    const Int& x = w.a.at(i, j);
                    if (x == 0) continue;
                    if (pr < 0 || mpz_cmpabs(x.get_mpz_t(), w.a.at(pr, pc).get_mpz_t()) < 0)
                        pr = i, pc = j;
                }
            return {pr, pc};
        };

        auto [pr, pc] = find_pivot();
        if (pr < 0) break;
        w.swap_rows(t, pr);
        w.swap_cols(t, pc);

        for (;;) {
            bool dirty = false;
            for (int r = t + 1; r < w.a.rows(); ++r) {
                if (w.a.at(r, t) == 0) continue;
                Int q = w.a.at(r, t) / w.a.at(t, t);  // truncated
                w.add_row(r, t, -q);
                if (w.a.at(r, t) != 0) dirty = true;
            }
            if (dirty) {
                // A remainder smaller than the pivot appeared; re-pick.
                auto [nr, nc] = find_pivot();
                w.swap_rows(t, nr);
                w.swap_cols(t, nc);
                continue;
            }
            for (int c = t + 1; c < w.a.cols(); ++c) {
                if (w.a.at(t, c) == 0) continue;
                Int q = w.a.at(t, c) / w.a.at(t, t);
                w.add_col(c, t, -q);
                if (w.a.at(t, c) != 0) dirty = true;
            }
            if (dirty) {
                auto [nr, nc] = find_pivot();
                w.swap_rows(t, nr);
                w.swap_cols(t, nc);
                continue;
            }
            // Pivot divides the rest of the submatrix, or pull a bad row up.
            int bad_r = -1;
            for (int r = t + 1; r < w.a.rows() && bad_r < 0; ++r)
                for (int c = t + 1; c < w.a.cols(); ++c)
                    if (w.a.at(r, c) % w.a.at(t, t) != 0) { bad_r = r; break; }
            if (bad_r < 0) break;
            w.add_row(t, bad_r, 1);
        }
        if (w.a.at(t, t) < 0) w.negate_row(t);
        invariants.push_back(w.a.at(t, t));
    }

    SNFResult res;
    res.invariants = std::move(invariants);
    res.u = std::move(w.u);
    res.u_inv = std::move(w.u_inv);
    res.v = std::move(w.v);
    res.v_inv = std::move(w.v_inv);
    return res;
}

std::optional<std::vector<Int>> solve(const IntMatrix& m, const std::vector<Int>& b) {
    if (static_cast<int>(b.size()) != m.rows()) throw_internal("solve: shape mismatch");
    SNFResult s = smith_normal_form(m);
    std::vector<Int> c = s.u.mul_vec(b);
    std::vector<Int> y(m.cols());
    int r = s.rank();
    for (int i = 0; i < static_cast<int>(c.size()); ++i) {
        if (i < r) {
            if (c[i] % s.invariants[i] != 0) return std::nullopt;
            if (i < m.cols()) y[i] = c[i] / s.invariants[i];
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return s.v.mul_vec(y);
}

bool ClassCoords::is_zero() const {
    for (const Int& x : free_part)
        if (x != 0) return false;
    for (const Int& x : torsion_part)
        if (x != 0) return false;
    return true;
}

ClassCoords ClassCoords::negated() const {
    ClassCoords r = *this;
    for (Int& x : r.free_part) x = -x;
    // torsion coordinates stay reduced mod their order; re-reduction happens
    // where the orders are known, so keep the raw negation out of here.
    for (Int& x : r.torsion_part) x = -x;
    return r;
}

CohomologyStep::CohomologyStep(const IntMatrix& d_in, const IntMatrix& d_out) {
    if (d_in.cols() > 0 && d_out.rows() > 0 && d_in.rows() != d_out.cols())
        throw_internal("cohomology_step: ambient dimension mismatch");
    ambient_ = d_out.cols() > 0 || d_in.rows() > 0
                   ? (d_out.cols() > 0 ? d_out.cols() : d_in.rows())
                   : 0;
    // Composability d_out * d_in = 0; a failure means a differential bug.
    if (d_out.rows() > 0 && d_in.cols() > 0 && !d_out.mul(d_in).is_zero())
        throw_internal("cohomology_step: d_out * d_in != 0");

    d_out_ = d_out;
    int n = ambient_;

    IntMatrix dout = d_out.cols() == n ? d_out : IntMatrix(0, n);
    SNFResult s1 = smith_normal_form(dout);
    int r1 = s1.rank();
    int k = n - r1;

    // Kernel coordinates: bottom k rows of V1^{-1}; kernel basis: last k
    // columns of V1.
    ker_coord_ = IntMatrix(k, n);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j) ker_coord_.at(i, j) = s1.v_inv.at(r1 + i, j);
    IntMatrix kb(n, k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) kb.at(i, j) = s1.v.at(i, r1 + j);

    int p = d_in.cols();
    IntMatrix din = d_in.rows() == n ? d_in : IntMatrix(n, p);
    IntMatrix y = ker_coord_.mul(din);  // k x p
    SNFResult s2 = smith_normal_form(y);
    int s = s2.rank();

    u2_ = std::move(s2.u);
    v2_ = std::move(s2.v);
    image_invariants_ = s2.invariants;

    free_slot_.assign(k, -1);
    torsion_slot_.assign(k, -1);
    for (int i = 0; i < k; ++i) {
        if (i < s) {
            if (image_invariants_[i] > 1) {
                torsion_slot_[i] = static_cast<int>(torsion_.size());
                torsion_.push_back(image_invariants_[i]);
            }
        } else {
            free_slot_[i] = static_cast<int>(free_rank_);
            ++free_rank_;
        }
    }

    // Representatives: kb * (U2^{-1} e_i).
    auto representative = [&](int i) {
        std::vector<Int> col(k);
        for (int r = 0; r < k; ++r) col[r] = s2.u_inv.at(r, i);
        return kb.mul_vec(col);
    };
    for (int i = 0; i < k; ++i) {
        if (free_slot_[i] >= 0) free_reps_.push_back(representative(i));
        else if (torsion_slot_[i] >= 0) torsion_reps_.push_back(representative(i));
    }
}

ClassCoords CohomologyStep::classify(const std::vector<Int>& z) const {
    if (static_cast<int>(z.size()) != ambient_) throw_internal("classify: wrong ambient dimension");
    if (d_out_.rows() > 0) {
        std::vector<Int> dz = d_out_.mul_vec(z);
        for (const Int& x : dz)
            if (x != 0) throw_internal("classify: input is not a cocycle");
    }
    std::vector<Int> w = ker_coord_.mul_vec(z);
    std::vector<Int> c = u2_.mul_vec(w);
    ClassCoords out;
    out.free_part.resize(free_reps_.size());
    out.torsion_part.resize(torsion_reps_.size());
    for (int i = 0; i < static_cast<int>(c.size()); ++i) {
        if (free_slot_[i] >= 0) out.free_part[free_slot_[i]] = c[i];
        else if (torsion_slot_[i] >= 0) {
            Int r;
            mpz_mod(r.get_mpz_t(), c[i].get_mpz_t(),
                    torsion_[torsion_slot_[i]].get_mpz_t());
            out.torsion_part[torsion_slot_[i]] = r;
        }
    }
    return out;
}

std::optional<std::vector<Int>> CohomologyStep::coboundary_preimage(
    const std::vector<Int>& z) const {
    std::vector<Int> w = ker_coord_.mul_vec(z);
    std::vector<Int> c = u2_.mul_vec(w);
    int k = static_cast<int>(c.size());
    int s = static_cast<int>(image_invariants_.size());
    int p = v2_.rows();
    std::vector<Int> y(p);
    for (int i = 0; i < k; ++i) {
        if (i < s) {
            if (c[i] % image_invariants_[i] != 0) return std::nullopt;
            y[i] = c[i] / image_invariants_[i];
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return v2_.mul_vec(y);
}

}  // namespace zk
