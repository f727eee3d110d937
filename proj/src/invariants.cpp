#include "dercent/invariants.hpp"

#include "dercent/error.hpp"
#include "dercent/kernels.hpp"

namespace dercent {

std::string to_string(EndoTag tag)
{
    switch (tag) {
    case EndoTag::derivations: return "derivations";
    case EndoTag::centroid: return "centroid";
    case EndoTag::differential_centroid: return "differential_centroid";
    case EndoTag::s_module_derivations: return "s_module_derivations";
    case EndoTag::vanishing_on_A1: return "vanishing_on_A1";
    case EndoTag::relative_derivations: return "relative_derivations";
    case EndoTag::commutant: return "commutant";
    case EndoTag::other: return "other";
    }
    return "other";
}

Matrix EndoSpace::element(std::size_t i) const
{
    return Matrix::unflatten(space.field(), rows, cols, space.basis().row_span(i));
}

std::vector<Matrix> EndoSpace::matrices() const
{
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < dim(); ++i)
        out.push_back(element(i));
    return out;
}

bool EndoSpace::contains(const Matrix& m) const
{
    return coordinates(m).has_value();
}

std::optional<Vec> EndoSpace::coordinates(const Matrix& m) const
{
    if (m.rows() != rows || m.cols() != cols)
        throw Error(ErrorKind::DimensionMismatch, "matrix shape does not match the endomorphism space");
    return space.coordinates(m.flatten());
}

EndoSpace make_endo_space(EndoTag tag, std::size_t rows, std::size_t cols, const std::vector<Matrix>& spanning)
{
    Field f = spanning.empty() ? Field() : spanning.front().field();
    std::vector<Vec> flat;
    for (const auto& m : spanning)
        flat.push_back(m.flatten());
    return {tag, rows, cols, Subspace::span(f, rows * cols, flat)};
}

namespace {

EndoSpace solve_endo(EndoTag tag, Field f, std::size_t rows, std::size_t cols, const std::vector<SparseRow>& eqs)
{
    return {tag, rows, cols, kernels::solve_homogeneous(f, rows * cols, eqs)};
}

void append(std::vector<SparseRow>& to, std::vector<SparseRow> from)
{
    std::move(from.begin(), from.end(), std::back_inserter(to));
}

} // namespace

std::vector<SparseRow> derivation_equations(const Algebra& a)
{
    const std::size_t n = a.dim();
    return kernels::assemble(n, [&](std::size_t i, std::vector<SparseRow>& out) {
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<SparseRow> rows(n);
            // D(b_i b_j)
            for (const auto& [l, c] : a.product(i, j))
                for (std::size_t k = 0; k < n; ++k)
                    rows[k].emplace_back(k * n + l, c);
            for (std::size_t r = 0; r < n; ++r) {
                // - D(b_i) b_j
                for (const auto& [k, c] : a.product(r, j))
                    rows[k].emplace_back(r * n + i, -c);
                // - b_i D(b_j)
                for (const auto& [k, c] : a.product(i, r))
                    rows[k].emplace_back(r * n + j, -c);
            }
            for (auto& row : rows)
                if (!row.empty())
                    out.push_back(std::move(row));
        }
    });
}

std::vector<SparseRow> commutant_equations(std::size_t n, const std::vector<Matrix>& mats)
{
    return kernels::assemble(mats.size(), [&](std::size_t idx, std::vector<SparseRow>& out) {
        const Matrix& m = mats[idx];
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) {
                SparseRow row;
                for (std::size_t l = 0; l < n; ++l) {
                    if (!m(l, j).is_zero())
                        row.emplace_back(k * n + l, m(l, j));
                    if (!m(k, l).is_zero())
                        row.emplace_back(l * n + j, -m(k, l));
                }
                if (!row.empty())
                    out.push_back(std::move(row));
            }
    });
}

std::vector<SparseRow> annihilator_equations(std::size_t n, const std::vector<Vec>& vectors)
{
    std::vector<SparseRow> out;
    for (const auto& v : vectors)
        for (std::size_t k = 0; k < n; ++k) {
            SparseRow row;
            for (std::size_t l = 0; l < n; ++l)
                if (!v[l].is_zero())
                    row.emplace_back(k * n + l, v[l]);
            if (!row.empty())
                out.push_back(std::move(row));
        }
    return out;
}

bool is_derivation(const Algebra& a, const Matrix& d)
{
    const std::size_t n = a.dim();
    if (d.rows() != n || d.cols() != n)
        throw Error(ErrorKind::DimensionMismatch, "derivation check on a matrix of the wrong size");
    std::vector<Vec> images;
    for (std::size_t i = 0; i < n; ++i)
        images.push_back(d.column(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec lhs = a.zero();
            for (const auto& [l, c] : a.product(i, j))
                axpy(lhs, c, images[l]);
            Vec rhs = add(a.multiply(images[i], a.basis_vector(j)), a.multiply(a.basis_vector(i), images[j]));
            if (lhs != rhs)
                return false;
        }
    return true;
}

EndoSpace derivation_space(const Algebra& a)
{
    return solve_endo(EndoTag::derivations, a.field(), a.dim(), a.dim(), derivation_equations(a));
}

EndoSpace relative_derivation_space(const Algebra& a, const Subspace& b)
{
    if (b.ambient_dim() != a.dim())
        throw Error(ErrorKind::DimensionMismatch, "subspace lives in the wrong ambient space");
    const std::size_t n = a.dim(), k = b.dim();
    const Field f = a.field();
    const auto beta = b.basis_vectors();
    std::vector<Matrix> left, right;
    for (const auto& v : beta) {
        left.push_back(a.left_operator(v));
        right.push_back(a.right_operator(v));
    }
    // gamma[s * k + t] = coordinates of beta_s beta_t in B
    std::vector<Vec> gamma;
    for (std::size_t s = 0; s < k; ++s)
        for (std::size_t t = 0; t < k; ++t) {
            auto coords = b.coordinates(a.multiply(beta[s], beta[t]));
            if (!coords)
                throw Error(ErrorKind::NotClosed, "subspace is not closed under the product");
            gamma.push_back(std::move(*coords));
        }
    // Unknown delta(r, s) at r * k + s: coefficient of b_r in delta(beta_s).
    auto eqs = kernels::assemble(k, [&](std::size_t s, std::vector<SparseRow>& out) {
        for (std::size_t t = 0; t < k; ++t) {
            std::vector<SparseRow> rows(n);
            const Vec& g = gamma[s * k + t];
            for (std::size_t l = 0; l < k; ++l)
                if (!g[l].is_zero())
                    for (std::size_t row = 0; row < n; ++row)
                        rows[row].emplace_back(row * k + l, g[l]);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t row = 0; row < n; ++row) {
                    // - delta(beta_s) beta_t - beta_s delta(beta_t)
                    if (!right[t](row, r).is_zero())
                        rows[row].emplace_back(r * k + s, -right[t](row, r));
                    if (!left[s](row, r).is_zero())
                        rows[row].emplace_back(r * k + t, -left[s](row, r));
                }
            for (auto& row : rows)
                if (!row.empty())
                    out.push_back(std::move(row));
        }
    });
    return solve_endo(EndoTag::relative_derivations, f, n, k, eqs);
}

EndoSpace commutant(Field f, std::size_t n, const std::vector<Matrix>& mats)
{
    return solve_endo(EndoTag::commutant, f, n, n, commutant_equations(n, mats));
}

EndoSpace centroid(const Algebra& a)
{
    // gamma(b_i b_j) = gamma(b_i) b_j is gamma R_j = R_j gamma, already included.
    const auto& ops = a.mult_operators();
    std::vector<Matrix> gens = ops.left;
    gens.insert(gens.end(), ops.right.begin(), ops.right.end());
    auto out = commutant(a.field(), a.dim(), gens);
    out.tag = EndoTag::centroid;
    return out;
}

EndoSpace differential_centroid(const Algebra& a)
{
    auto c = centroid(a);
    auto d = derivation_space(a);
    auto comm = commutant(a.field(), a.dim(), d.matrices());
    return {EndoTag::differential_centroid, a.dim(), a.dim(), c.space.intersect(comm.space)};
}

std::vector<Matrix> s_action_operators(const Algebra& a, const Algebra& s)
{
    const auto id = Matrix::identity(a.field(), a.dim());
    std::vector<Matrix> out;
    for (const auto& l : s.mult_operators().left)
        out.push_back(kron(id, l));
    return out;
}

std::vector<Vec> a_tensor_one(const Algebra& a, const Algebra& s)
{
    const Vec& one = s.unit();
    std::vector<Vec> out;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Vec v = zero_vec(a.field(), a.dim() * s.dim());
        for (std::size_t j = 0; j < s.dim(); ++j)
            v[i * s.dim() + j] = one[j];
        out.push_back(std::move(v));
    }
    return out;
}

EndoSpace s_module_derivations(const Algebra& a, const Algebra& s)
{
    s.require_commutative_associative_unital("S");
    const Algebra as = tensor_product(a, s);
    auto eqs = derivation_equations(as);
    append(eqs, commutant_equations(as.dim(), s_action_operators(a, s)));
    return solve_endo(EndoTag::s_module_derivations, as.field(), as.dim(), as.dim(), eqs);
}

EndoSpace vanishing_on_A1_derivations(const Algebra& a, const Algebra& s)
{
    s.require_commutative_associative_unital("S");
    const Algebra as = tensor_product(a, s);
    auto eqs = derivation_equations(as);
    append(eqs, annihilator_equations(as.dim(), a_tensor_one(a, s)));
    return solve_endo(EndoTag::vanishing_on_A1, as.field(), as.dim(), as.dim(), eqs);
}

PsiReport psi_map(const Algebra& a, const Algebra& s)
{
    if (!a.is_perfect())
        throw Error(ErrorKind::NotPerfect, "A is not perfect");
    s.require_commutative_associative_unital("S");
    const Algebra as = tensor_product(a, s);
    const auto ca = centroid(a);
    const auto cas = centroid(as);
    const auto& ls = s.mult_operators().left;

    PsiReport rep;
    rep.domain_dim = ca.dim() * s.dim();
    rep.centroid_dim = cas.dim();
    std::vector<Vec> columns;
    rep.image_in_centroid = true;
    for (const auto& gamma : ca.matrices())
        for (const auto& l : ls) {
            Matrix img = kron(gamma, l);
            rep.image_in_centroid = rep.image_in_centroid && cas.contains(img);
            columns.push_back(img.flatten());
        }
    rep.psi = Matrix::from_columns(as.field(), as.dim() * as.dim(), columns);
    rep.rank = Subspace::span(as.field(), as.dim() * as.dim(), columns).dim();
    rep.injective = rep.rank == rep.domain_dim;
    rep.surjective = rep.image_in_centroid && rep.rank == rep.centroid_dim;
    return rep;
}

Algebra centroid_algebra(const EndoSpace& c)
{
    const std::size_t k = c.dim();
    const auto mats = c.matrices();
    std::vector<SparseRow> table(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            auto coords = c.coordinates(mats[i] * mats[j]);
            if (!coords)
                throw Error(ErrorKind::NotClosed, "centroid basis is not closed under composition");
            for (std::size_t t = 0; t < k; ++t)
                if (!(*coords)[t].is_zero())
                    table[i * k + j].emplace_back(t, (*coords)[t]);
        }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < k; ++i)
        names.push_back(k == 1 && mats[0].is_identity() ? "id" : "gamma" + std::to_string(i));
    return Algebra(c.space.field(), std::move(names), std::move(table));
}

} // namespace dercent
