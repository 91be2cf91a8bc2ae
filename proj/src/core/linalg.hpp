#ifndef ZK_CORE_LINALG_HPP
#define ZK_CORE_LINALG_HPP

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace zk {

/// Exact arbitrary-precision integer.
using Int = mpz_class;

/// Dense matrix of exact integers, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}

    static IntMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
    const Int& at(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }

    bool is_zero() const;
    bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    IntMatrix mul(const IntMatrix& o) const;
    std::vector<Int> mul_vec(const std::vector<Int>& x) const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

/// U * M * V = diag(d_1, ..., d_r, 0, ...), d_i >= 1, d_i | d_{i+1};
/// U, V unimodular with tracked inverses.
struct SNFResult {
    std::vector<Int> invariants;  // d_1..d_r, the nonzero diagonal
    IntMatrix u, u_inv;           // rows x rows
    IntMatrix v, v_inv;           // cols x cols

    int rank() const { return static_cast<int>(invariants.size()); }
};

/// Deterministic SNF: smallest-magnitude pivot, ties by lowest row then column.
SNFResult smith_normal_form(const IntMatrix& m);

/// Solve M x = b exactly over the integers.
std::optional<std::vector<Int>> solve(const IntMatrix& m, const std::vector<Int>& b);

/// Coordinates of a cohomology class in the computed generator basis.
/// The class is zero iff all stored coordinates are zero.
struct ClassCoords {
    std::vector<Int> free_part;     // one per free generator
    std::vector<Int> torsion_part;  // one per torsion generator, reduced mod its order

    bool is_zero() const;
    bool operator==(const ClassCoords& o) const = default;
    ClassCoords negated() const;
};

/// H = ker(d_out) / im(d_in) of a two-step integer sequence
///   C_in --d_in--> C --d_out--> C_out,
/// together with representative cocycles and an exact classifier for
/// arbitrary cocycles in C.
class CohomologyStep {
public:
    /// Throws Error(internal) unless d_out * d_in = 0.
    CohomologyStep(const IntMatrix& d_in, const IntMatrix& d_out);

    int ambient_dim() const { return ambient_; }
    long free_rank() const { return free_rank_; }
    /// Torsion orders aligned with the torsion generators, ascending.
    const std::vector<Int>& torsion() const { return torsion_; }

    /// Representative cocycle of a generator, as ambient coordinates.
    const std::vector<Int>& free_representative(int i) const { return free_reps_[i]; }
    const std::vector<Int>& torsion_representative(int i) const { return torsion_reps_[i]; }

    /// Express a cocycle in the generator basis. Throws Error(internal) if z
    /// is not a cocycle.
    ClassCoords classify(const std::vector<Int>& z) const;

    /// Decide z = d_in x; returns a preimage x when solvable. Requires z to be
    /// a cocycle.
    std::optional<std::vector<Int>> coboundary_preimage(const std::vector<Int>& z) const;

    bool is_coboundary(const std::vector<Int>& z) const { return classify(z).is_zero(); }

private:
    int ambient_ = 0;
    long free_rank_ = 0;
    std::vector<Int> torsion_;
    std::vector<std::vector<Int>> free_reps_;
    std::vector<std::vector<Int>> torsion_reps_;

    // classifier pieces: w = ker_coord * z are the kernel coordinates,
    // c = u2 * w the generator coordinates.
    IntMatrix d_out_;      // to verify cocycles
    IntMatrix ker_coord_;  // k x N
    IntMatrix u2_;         // k x k
    IntMatrix v2_;         // p x p (preimage extraction)
    std::vector<Int> image_invariants_;  // d_1..d_s of im(d_in) in kernel coords
    std::vector<int> free_slot_;         // position in u2-basis -> free index or -1
    std::vector<int> torsion_slot_;      // position in u2-basis -> torsion index or -1
};

}  // namespace zk

#endif
