#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hopfstar/scalars.hpp"

namespace hopfstar {

using Vector = std::vector<Scalar>;

Vector zero_vector(const FieldContext& ctx, int n);
Vector unit_vector(const FieldContext& ctx, int n, int i);
bool is_zero(std::span<const Scalar> v);

/// Dense row-major matrix over one cyclotomic field.
class Matrix {
public:
    Matrix(const FieldContext& ctx, int rows, int cols);

    static Matrix identity(const FieldContext& ctx, int n);
    static Matrix from_rows(const FieldContext& ctx, int cols, const std::vector<Vector>& rows);
    static Matrix from_columns(const FieldContext& ctx, int rows, const std::vector<Vector>& cols);

    const FieldContext& context() const { return *ctx_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Scalar& operator()(int r, int c) { return data_[index(r, c)]; }
    const Scalar& operator()(int r, int c) const { return data_[index(r, c)]; }

    std::span<const Scalar> row(int r) const;
    Vector row_vector(int r) const;
    Vector column(int c) const;

    Matrix transpose() const;
    Matrix conjugate() const;
    /// Conjugate transpose.
    Matrix adjoint() const;

    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(const Scalar& s);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Scalar& s, Matrix m) { return m *= s; }
    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    /// this += s * m
    void add_scaled(const Scalar& s, const Matrix& m);

    Vector apply(std::span<const Scalar> v) const;

    /// Rows [r0, r0+nr) x columns [c0, c0+nc).
    Matrix block(int r0, int c0, int nr, int nc) const;
    void set_block(int r0, int c0, const Matrix& m);

    /// Flattened row-major entries.
    const std::vector<Scalar>& entries() const { return data_; }

private:
    std::size_t index(int r, int c) const {
        return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c);
    }

    const FieldContext* ctx_;
    int rows_;
    int cols_;
    std::vector<Scalar> data_;
};

Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diagonal(const Matrix& a, const Matrix& b);

struct RrefResult {
    Matrix reduced;
    int rank;
    std::vector<int> pivots;
};

/// Canonical reduced row echelon form.
RrefResult rref(const Matrix& m);
int rank(const Matrix& m);
bool is_invertible(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);

/// A subspace of F^n, stored as the nonzero rows of its canonical RREF.
class Subspace {
public:
    static Subspace zero(const FieldContext& ctx, int ambient);
    static Subspace full(const FieldContext& ctx, int ambient);
    /// Span of the given vectors.
    static Subspace span(const FieldContext& ctx, int ambient, const std::vector<Vector>& vectors);
    /// Span of the rows of m.
    static Subspace row_space(const Matrix& m);

    const FieldContext& context() const { return basis_.context(); }
    int ambient_dim() const { return basis_.cols(); }
    int dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }
    Vector vector(int i) const { return basis_.row_vector(i); }
    std::vector<Vector> vectors() const;

    bool contains(std::span<const Scalar> v) const;
    bool contains(const Subspace& other) const;
    /// Coordinates of v in the canonical basis; v must lie in the subspace.
    Vector coordinates(std::span<const Scalar> v) const;
    /// Basis vectors as the columns of an ambient x dim matrix.
    Matrix inclusion() const;

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

private:
    Subspace(Matrix basis, std::vector<int> pivots) : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

    Matrix basis_;
    std::vector<int> pivots_;
};

/// Null space {v : m v = 0}.
Subspace kernel(const Matrix& m);
/// Column space of m.
Subspace image(const Matrix& m);
Subspace subspace_sum(const Subspace& u, const Subspace& v);
Subspace subspace_intersect(const Subspace& u, const Subspace& v);
/// {n : n . s = 0 for all s in S} under the bilinear dot product.
Subspace annihilator(const Subspace& s);

/// Coset representatives for F^n / S: standard basis vectors chosen greedily
/// in increasing index order. Returned as the rows of a (n - dim S) x n matrix.
Matrix quotient_basis(int ambient_dim, const Subspace& s);

/// Coordinates relative to a (complement representatives + subspace basis)
/// splitting of the ambient space.
class QuotientCoordinates {
public:
    QuotientCoordinates(int ambient_dim, const Subspace& s);

    const Matrix& representatives() const { return reps_; }
    int quotient_dim() const { return reps_.rows(); }
    /// Quotient coordinates of v (the component along the representatives).
    Vector project(std::span<const Scalar> v) const;
    /// quotient_dim x ambient matrix of project().
    const Matrix& projection() const { return projection_; }

private:
    Matrix reps_;
    Matrix projection_;
};

/// Sparse homogeneous linear system sum_j a_ij x_j = 0, eliminated
/// incrementally as equations arrive.
class LinearSystem {
public:
    using Row = std::vector<std::pair<int, Scalar>>;

    LinearSystem(const FieldContext& ctx, int unknowns);

    int unknowns() const { return unknowns_; }
    int rank() const { return static_cast<int>(rows_.size()); }

    /// Terms may repeat an index; they are combined.
    void add_equation(Row terms);

    /// Basis of the solution space in canonical (reduced) form: one vector per
    /// free unknown, with that unknown set to 1 and the other free ones to 0.
    std::vector<Vector> nullspace() const;

    /// Treats the last unknown as the constant 1 and returns a solution of the
    /// resulting affine system, if one exists.
    std::optional<Vector> affine_solution() const;

private:
    std::vector<std::pair<int, Row>> reduced_rows() const;

    const FieldContext* ctx_;
    int unknowns_;
    std::vector<Row> rows_;              // echelon rows, leading entry 1
    std::vector<int> pivot_row_of_col_;  // -1 when the column is free
};

nlohmann::json to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, const FieldContext& ctx);

}  // namespace hopfstar
