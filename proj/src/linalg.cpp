#include "hopfstar/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace hopfstar {

Vector zero_vector(const FieldContext& ctx, int n) { return Vector(static_cast<std::size_t>(n), Scalar(ctx)); }

Vector unit_vector(const FieldContext& ctx, int n, int i) {
    Vector v = zero_vector(ctx, n);
    v[static_cast<std::size_t>(i)] = Scalar(ctx, Rational(1));
    return v;
}

bool is_zero(std::span<const Scalar> v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(const FieldContext& ctx, int rows, int cols)
    : ctx_(&ctx),
      rows_(rows),
      cols_(cols),
      data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), Scalar(ctx)) {
    if (rows < 0 || cols < 0) {
        throw std::invalid_argument("Matrix: negative dimension");
    }
}

Matrix Matrix::identity(const FieldContext& ctx, int n) {
    Matrix m(ctx, n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = Scalar(ctx, Rational(1));
    }
    return m;
}

Matrix Matrix::from_rows(const FieldContext& ctx, int cols, const std::vector<Vector>& rows) {
    Matrix m(ctx, static_cast<int>(rows.size()), cols);
    for (int r = 0; r < m.rows_; ++r) {
        const auto& row = rows[static_cast<std::size_t>(r)];
        if (static_cast<int>(row.size()) != cols) {
            throw std::invalid_argument("Matrix::from_rows: ragged rows");
        }
        for (int c = 0; c < cols; ++c) {
            m(r, c) = row[static_cast<std::size_t>(c)];
        }
    }
    return m;
}

Matrix Matrix::from_columns(const FieldContext& ctx, int rows, const std::vector<Vector>& cols) {
    return from_rows(ctx, rows, cols).transpose();
}

std::span<const Scalar> Matrix::row(int r) const {
    return {data_.data() + index(r, 0), static_cast<std::size_t>(cols_)};
}

Vector Matrix::row_vector(int r) const {
    auto s = row(r);
    return {s.begin(), s.end()};
}

Vector Matrix::column(int c) const {
    Vector v;
    v.reserve(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) {
        v.push_back((*this)(r, c));
    }
    return v;
}

Matrix Matrix::transpose() const {
    Matrix t(*ctx_, cols_, rows_);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

Matrix Matrix::conjugate() const {
    Matrix t(*ctx_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (!data_[i].is_zero()) {
            t.data_[i] = conj(data_[i]);
        }
    }
    return t;
}

Matrix Matrix::adjoint() const {
    Matrix t(*ctx_, cols_, rows_);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) {
            const Scalar& s = (*this)(r, c);
            if (!s.is_zero()) {
                t(c, r) = conj(s);
            }
        }
    }
    return t;
}

bool Matrix::is_zero() const { return hopfstar::is_zero(data_); }

Matrix& Matrix::operator+=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        throw std::invalid_argument("Matrix +: shape mismatch");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (!o.data_[i].is_zero()) {
            data_[i] += o.data_[i];
        }
    }
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        throw std::invalid_argument("Matrix -: shape mismatch");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (!o.data_[i].is_zero()) {
            data_[i] -= o.data_[i];
        }
    }
    return *this;
}

Matrix& Matrix::operator*=(const Scalar& s) {
    for (auto& x : data_) {
        if (!x.is_zero()) {
            x *= s;
        }
    }
    return *this;
}

void Matrix::add_scaled(const Scalar& s, const Matrix& m) {
    if (rows_ != m.rows_ || cols_ != m.cols_) {
        throw std::invalid_argument("Matrix::add_scaled: shape mismatch");
    }
    if (s.is_zero()) {
        return;
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i].add_product(s, m.data_[i]);
    }
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
        throw std::invalid_argument("Matrix *: shape mismatch");
    }
    Matrix out(*a.ctx_, a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
        for (int k = 0; k < a.cols_; ++k) {
            const Scalar& aik = a(i, k);
            if (aik.is_zero()) {
                continue;
            }
            for (int j = 0; j < b.cols_; ++j) {
                out(i, j).add_product(aik, b(k, j));
            }
        }
    }
    return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Vector Matrix::apply(std::span<const Scalar> v) const {
    if (static_cast<int>(v.size()) != cols_) {
        throw std::invalid_argument("Matrix::apply: dimension mismatch");
    }
    Vector out = zero_vector(*ctx_, rows_);
    for (int c = 0; c < cols_; ++c) {
        const Scalar& x = v[static_cast<std::size_t>(c)];
        if (x.is_zero()) {
            continue;
        }
        for (int r = 0; r < rows_; ++r) {
            out[static_cast<std::size_t>(r)].add_product((*this)(r, c), x);
        }
    }
    return out;
}

Matrix Matrix::block(int r0, int c0, int nr, int nc) const {
    Matrix m(*ctx_, nr, nc);
    for (int r = 0; r < nr; ++r) {
        for (int c = 0; c < nc; ++c) {
            m(r, c) = (*this)(r0 + r, c0 + c);
        }
    }
    return m;
}

void Matrix::set_block(int r0, int c0, const Matrix& m) {
    for (int r = 0; r < m.rows_; ++r) {
        for (int c = 0; c < m.cols_; ++c) {
            (*this)(r0 + r, c0 + c) = m(r, c);
        }
    }
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) {
        throw std::invalid_argument("vstack: column mismatch");
    }
    Matrix m(a.context(), a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
    Matrix m(a.context(), a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

// ---------------------------------------------------------------------------
// Elimination

RrefResult rref(const Matrix& input) {
    Matrix m = input;
    const int rows = m.rows();
    const int cols = m.cols();
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i) {
            if (!m(i, c).is_zero()) {
                piv = i;
                break;
            }
        }
        if (piv < 0) {
            continue;
        }
        if (piv != r) {
            for (int k = 0; k < cols; ++k) {
                std::swap(m(piv, k), m(r, k));
            }
        }
        Scalar inv = m(r, c).inverse();
        for (int k = c; k < cols; ++k) {
            if (!m(r, k).is_zero()) {
                m(r, k) *= inv;
            }
        }
        for (int i = 0; i < rows; ++i) {
            if (i == r || m(i, c).is_zero()) {
                continue;
            }
            Scalar f = -m(i, c);
            for (int k = c; k < cols; ++k) {
                if (!m(r, k).is_zero()) {
                    m(i, k).add_product(f, m(r, k));
                }
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), r, std::move(pivots)};
}

int rank(const Matrix& m) { return rref(m).rank; }

bool is_invertible(const Matrix& m) { return m.is_square() && rank(m) == m.rows(); }

std::optional<Matrix> inverse(const Matrix& m) {
    if (!m.is_square()) {
        return std::nullopt;
    }
    const int n = m.rows();
    Matrix aug(m.context(), n, 2 * n);
    aug.set_block(0, 0, m);
    aug.set_block(0, n, Matrix::identity(m.context(), n));
    RrefResult res = rref(aug);
    if (res.rank < n || res.pivots[static_cast<std::size_t>(n - 1)] != n - 1) {
        return std::nullopt;
    }
    return res.reduced.block(0, n, n, n);
}

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::zero(const FieldContext& ctx, int ambient) { return Subspace(Matrix(ctx, 0, ambient), {}); }

Subspace Subspace::full(const FieldContext& ctx, int ambient) {
    std::vector<int> piv(static_cast<std::size_t>(ambient));
    for (int i = 0; i < ambient; ++i) {
        piv[static_cast<std::size_t>(i)] = i;
    }
    return Subspace(Matrix::identity(ctx, ambient), std::move(piv));
}

Subspace Subspace::row_space(const Matrix& m) {
    RrefResult res = rref(m);
    return Subspace(res.reduced.block(0, 0, res.rank, m.cols()), std::move(res.pivots));
}

Subspace Subspace::span(const FieldContext& ctx, int ambient, const std::vector<Vector>& vectors) {
    if (vectors.empty()) {
        return zero(ctx, ambient);
    }
    return row_space(Matrix::from_rows(ctx, ambient, vectors));
}

std::vector<Vector> Subspace::vectors() const {
    std::vector<Vector> out;
    out.reserve(static_cast<std::size_t>(dim()));
    for (int i = 0; i < dim(); ++i) {
        out.push_back(vector(i));
    }
    return out;
}

Vector Subspace::coordinates(std::span<const Scalar> v) const {
    Vector c;
    c.reserve(pivots_.size());
    for (int p : pivots_) {
        c.push_back(v[static_cast<std::size_t>(p)]);
    }
    return c;
}

bool Subspace::contains(std::span<const Scalar> v) const {
    if (static_cast<int>(v.size()) != ambient_dim()) {
        throw std::invalid_argument("Subspace::contains: ambient mismatch");
    }
    // v lies in the row space iff v - sum_i v[p_i] * row_i vanishes.
    Vector rest(v.begin(), v.end());
    for (int i = 0; i < dim(); ++i) {
        Scalar f = -v[static_cast<std::size_t>(pivots_[static_cast<std::size_t>(i)])];
        if (f.is_zero()) {
            continue;
        }
        auto row = basis_.row(i);
        for (std::size_t k = 0; k < rest.size(); ++k) {
            rest[k].add_product(f, row[k]);
        }
    }
    return is_zero(rest);
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_dim() != ambient_dim()) {
        throw std::invalid_argument("Subspace::contains: ambient mismatch");
    }
    for (int i = 0; i < other.dim(); ++i) {
        if (!contains(other.basis_.row(i))) {
            return false;
        }
    }
    return true;
}

Matrix Subspace::inclusion() const { return basis_.transpose(); }

Subspace kernel(const Matrix& m) {
    LinearSystem sys(m.context(), m.cols());
    for (int r = 0; r < m.rows(); ++r) {
        LinearSystem::Row row;
        for (int c = 0; c < m.cols(); ++c) {
            if (!m(r, c).is_zero()) {
                row.emplace_back(c, m(r, c));
            }
        }
        sys.add_equation(std::move(row));
    }
    return Subspace::span(m.context(), m.cols(), sys.nullspace());
}

Subspace image(const Matrix& m) { return Subspace::row_space(m.transpose()); }

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim()) {
        throw std::invalid_argument("subspace_sum: ambient dimension mismatch");
    }
    return Subspace::row_space(vstack(u.basis(), v.basis()));
}

Subspace annihilator(const Subspace& s) { return kernel(s.basis()); }

Subspace subspace_intersect(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim()) {
        throw std::invalid_argument("subspace_intersect: ambient dimension mismatch");
    }
    // U = ann(ann(U)), so U n V is cut out by both annihilators.
    return kernel(vstack(annihilator(u).basis(), annihilator(v).basis()));
}

Matrix quotient_basis(int ambient_dim, const Subspace& s) {
    if (s.ambient_dim() != ambient_dim) {
        throw std::invalid_argument("quotient_basis: ambient dimension mismatch");
    }
    const FieldContext& ctx = s.context();
    Subspace acc = s;
    std::vector<Vector> reps;
    for (int i = 0; i < ambient_dim && acc.dim() < ambient_dim; ++i) {
        Vector e = unit_vector(ctx, ambient_dim, i);
        if (!acc.contains(e)) {
            acc = subspace_sum(acc, Subspace::span(ctx, ambient_dim, {e}));
            reps.push_back(std::move(e));
        }
    }
    return Matrix::from_rows(ctx, ambient_dim, reps);
}

QuotientCoordinates::QuotientCoordinates(int ambient_dim, const Subspace& s)
    : reps_(quotient_basis(ambient_dim, s)), projection_(s.context(), 0, ambient_dim) {
    Matrix frame = vstack(reps_, s.basis()).transpose();
    auto inv = inverse(frame);
    if (!inv) {
        throw std::logic_error("QuotientCoordinates: representatives do not complete a basis");
    }
    projection_ = inv->block(0, 0, reps_.rows(), ambient_dim);
}

Vector QuotientCoordinates::project(std::span<const Scalar> v) const { return projection_.apply(v); }

// ---------------------------------------------------------------------------
// LinearSystem

namespace {

using Row = LinearSystem::Row;

Row normalize_terms(Row terms) {
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Row out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (!out.empty() && out.back().first == t.first) {
            out.back().second += t.second;
        } else {
            out.push_back(std::move(t));
        }
    }
    std::erase_if(out, [](const auto& t) { return t.second.is_zero(); });
    return out;
}

// a + f * b over sorted sparse rows.
Row axpy(const Row& a, const Scalar& f, const Row& b) {
    Row out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, f * b[j].second);
            ++j;
        } else {
            Scalar s = a[i].second;
            s.add_product(f, b[j].second);
            if (!s.is_zero()) {
                out.emplace_back(a[i].first, std::move(s));
            }
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

LinearSystem::LinearSystem(const FieldContext& ctx, int unknowns)
    : ctx_(&ctx), unknowns_(unknowns), pivot_row_of_col_(static_cast<std::size_t>(unknowns), -1) {}

void LinearSystem::add_equation(Row terms) {
    Row row = normalize_terms(std::move(terms));
    for (const auto& t : row) {
        if (t.first < 0 || t.first >= unknowns_) {
            throw std::out_of_range("LinearSystem: unknown index out of range");
        }
    }
    while (!row.empty()) {
        const int lead = row.front().first;
        const int pr = pivot_row_of_col_[static_cast<std::size_t>(lead)];
        if (pr < 0) {
            Scalar inv = row.front().second.inverse();
            for (auto& t : row) {
                t.second *= inv;
            }
            pivot_row_of_col_[static_cast<std::size_t>(lead)] = static_cast<int>(rows_.size());
            rows_.push_back(std::move(row));
            return;
        }
        Scalar f = -row.front().second;
        row = axpy(row, f, rows_[static_cast<std::size_t>(pr)]);
    }
}

std::vector<std::pair<int, Row>> LinearSystem::reduced_rows() const {
    // Back substitution in decreasing pivot order.
    std::vector<int> pivot_cols;
    for (int c = 0; c < unknowns_; ++c) {
        if (pivot_row_of_col_[static_cast<std::size_t>(c)] >= 0) {
            pivot_cols.push_back(c);
        }
    }
    std::vector<Row> reduced(static_cast<std::size_t>(unknowns_));
    for (auto it = pivot_cols.rbegin(); it != pivot_cols.rend(); ++it) {
        const int c = *it;
        Row row = rows_[static_cast<std::size_t>(pivot_row_of_col_[static_cast<std::size_t>(c)])];
        std::vector<int> to_clear;
        for (std::size_t k = 1; k < row.size(); ++k) {
            if (pivot_row_of_col_[static_cast<std::size_t>(row[k].first)] >= 0) {
                to_clear.push_back(row[k].first);
            }
        }
        for (int pc : to_clear) {
            auto pos = std::find_if(row.begin(), row.end(), [pc](const auto& t) { return t.first == pc; });
            if (pos == row.end()) {
                continue;
            }
            Scalar f = -pos->second;
            row = axpy(row, f, reduced[static_cast<std::size_t>(pc)]);
        }
        reduced[static_cast<std::size_t>(c)] = std::move(row);
    }
    std::vector<std::pair<int, Row>> out;
    for (int c : pivot_cols) {
        out.emplace_back(c, std::move(reduced[static_cast<std::size_t>(c)]));
    }
    return out;
}

std::vector<Vector> LinearSystem::nullspace() const {
    auto reduced = reduced_rows();
    std::vector<int> slot(static_cast<std::size_t>(unknowns_), -1);
    std::vector<Vector> basis;
    for (int f = 0; f < unknowns_; ++f) {
        if (pivot_row_of_col_[static_cast<std::size_t>(f)] < 0) {
            slot[static_cast<std::size_t>(f)] = static_cast<int>(basis.size());
            basis.push_back(unit_vector(*ctx_, unknowns_, f));
        }
    }
    for (const auto& [pc, row] : reduced) {
        for (std::size_t k = 1; k < row.size(); ++k) {
            const int s = slot[static_cast<std::size_t>(row[k].first)];
            basis[static_cast<std::size_t>(s)][static_cast<std::size_t>(pc)] = -row[k].second;
        }
    }
    return basis;
}

std::optional<Vector> LinearSystem::affine_solution() const {
    const int last = unknowns_ - 1;
    if (last < 0 || pivot_row_of_col_[static_cast<std::size_t>(last)] >= 0) {
        return std::nullopt;
    }
    auto reduced = reduced_rows();
    Vector v = zero_vector(*ctx_, unknowns_);
    v[static_cast<std::size_t>(last)] = Scalar(*ctx_, Rational(1));
    for (const auto& [pc, row] : reduced) {
        if (!row.empty() && row.back().first == last) {
            v[static_cast<std::size_t>(pc)] = -row.back().second;
        }
    }
    v.pop_back();
    return v;
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < m.cols(); ++c) {
            row.push_back(to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const nlohmann::json& j, const FieldContext& ctx) {
    if (!j.is_array()) {
        throw std::invalid_argument("matrix JSON must be a nested array");
    }
    const int rows = static_cast<int>(j.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(j.at(0).size());
    Matrix m(ctx, rows, cols);
    for (int r = 0; r < rows; ++r) {
        const auto& row = j.at(static_cast<std::size_t>(r));
        if (!row.is_array() || static_cast<int>(row.size()) != cols) {
            throw std::invalid_argument("matrix JSON rows must have equal length");
        }
        for (int c = 0; c < cols; ++c) {
            m(r, c) = scalar_from_json(row.at(static_cast<std::size_t>(c)), ctx);
        }
    }
    return m;
}

}  // namespace hopfstar
