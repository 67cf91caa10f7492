#include "formalframes/forms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <utility>

#include "formalframes/linalg.hpp"

namespace ff {

namespace {

/// Order-preserving subsets of {0..k-1} of size a, each as a sorted list.
std::vector<std::vector<int>> subsets_of_size(int k, int a)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == a) {
            out.push_back(cur);
            return;
        }
        for (int q = start; q < k; ++q) {
            cur.push_back(q);
            rec(q + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

/// Lower indices of a wedge factor: positions are looked up in J, the contracted marker becomes l.
void fill_indices(const std::vector<int>& pattern, const std::vector<int>& J, int l, std::vector<int>& out)
{
    out.resize(pattern.size());
    for (std::size_t q = 0; q < pattern.size(); ++q) {
        out[q] = pattern[q] == WedgeTerm::kContracted ? l : J[static_cast<std::size_t>(pattern[q])];
    }
}

void require_same_frame_shape(const FrameCoords& u, const BundleTangent& x)
{
    x.validate();
    if (x.n != u.n || x.r != u.r) throw ShapeError("tangent vector does not belong to the frame's bundle");
}

}  // namespace

void TorsionType::validate() const
{
    if (k < 1) throw DomainError("torsion order must be at least 1");
    if (static_cast<int>(p.size()) != k - 1) throw DomainError("torsion type tuple must have k - 1 entries");
    for (std::size_t a = 0; a < p.size(); ++a) {
        const int pa = p[a];
        if (pa < 1 || pa > static_cast<int>(a) + 2) throw DomainError("torsion type entry p_a must satisfy 1 <= p_a <= a + 1");
    }
}

std::string TorsionType::label() const
{
    std::ostringstream os;
    os << k << '(';
    for (std::size_t a = 0; a < p.size(); ++a) {
        if (a > 0) os << ',';
        os << p[a];
    }
    os << ')';
    return os.str();
}

std::vector<TorsionType> enumerate_torsion_types(int k)
{
    if (k < 1) throw DomainError("torsion order must be at least 1");
    std::vector<TorsionType> out;
    TorsionType t{k, std::vector<int>(static_cast<std::size_t>(k - 1), 1)};
    while (true) {
        out.push_back(t);
        // Odometer over p_a in 1..a+1, last entry fastest.
        int a = k - 2;
        while (a >= 0) {
            if (++t.p[static_cast<std::size_t>(a)] <= a + 2) break;
            t.p[static_cast<std::size_t>(a)] = 1;
            --a;
        }
        if (a < 0) break;
    }
    return out;
}

std::vector<WedgeTerm> torsion_wedge_terms(const TorsionType& t)
{
    t.validate();
    const int k = t.k - 1;
    std::vector<WedgeTerm> out;
    for (int a = 0; a <= k; ++a) {
        const int pa = a == 0 ? 1 : t.p[static_cast<std::size_t>(a - 1)];
        for (const auto& sel : subsets_of_size(k, a)) {
            WedgeTerm w;
            w.left = sel;
            w.left.insert(w.left.begin() + (pa - 1), WedgeTerm::kContracted);
            for (int q = 0; q < k; ++q) {
                if (!std::binary_search(sel.begin(), sel.end(), q)) w.right.push_back(q);
            }
            out.push_back(std::move(w));
        }
    }
    return out;
}

std::string format_wedge_term(const WedgeTerm& w)
{
    auto indices = [](const std::vector<int>& pattern) {
        std::string s;
        for (std::size_t q = 0; q < pattern.size(); ++q) {
            if (q > 0) s += ' ';
            s += pattern[q] == WedgeTerm::kContracted ? std::string("l") : "j" + std::to_string(pattern[q] + 1);
        }
        return s;
    };
    std::string out = "theta^i_{" + indices(w.left) + "} ^ theta^l";
    if (!w.right.empty()) out += "_{" + indices(w.right) + "}";
    return out;
}

LowerTensor component(const AlgebraVector& y, int m)
{
    if (m < 0 || m >= y.r) throw ShapeError("canonical form component out of range");
    if (m == 0) return LowerTensor(y.n, 0, y.base);
    return y.tensors[static_cast<std::size_t>(m - 1)];
}

CanonicalForm::CanonicalForm(FrameCoords u) : u_(std::move(u)), iso_(u_) {}

AlgebraVector CanonicalForm::operator()(const BundleTangent& x) const
{
    require_same_frame_shape(u_, x);
    return iso_.solve(x.projected(u_.r - 1));
}

AlgebraVector CanonicalForm::derivative(const BundleTangent& along, const BundleTangent& arg) const
{
    require_same_frame_shape(u_, along);
    // L_u is linear in the tensors of u and independent of the base point, so
    // moving u along X changes L_u by L_X and theta(arg) by -L_u^{-1} L_X theta(arg).
    const AlgebraVector value = (*this)(arg);
    const BundleTangent moved = tangent_map_apply(along.tensors, value);
    return AlgebraVector::unflatten(-iso_.solve_flat(moved.flatten()), u_.n, u_.r);
}

AlgebraVector CanonicalForm::exterior_derivative(const BundleTangent& x, const BundleTangent& y) const
{
    return exterior_derivative(x, y, (*this)(x), (*this)(y));
}

AlgebraVector CanonicalForm::exterior_derivative(const BundleTangent& x, const BundleTangent& y, const AlgebraVector& theta_x,
                                                 const AlgebraVector& theta_y) const
{
    require_same_frame_shape(u_, x);
    require_same_frame_shape(u_, y);
    const Eigen::VectorXd rhs = tangent_map_apply(x.tensors, theta_y).flatten() - tangent_map_apply(y.tensors, theta_x).flatten();
    return AlgebraVector::unflatten(-iso_.solve_flat(rhs), u_.n, u_.r);
}

AlgebraVector canonical_form(const FrameCoords& u, const BundleTangent& x) { return CanonicalForm(u)(x); }

Eigen::MatrixXd form_partials(const FrameCoords& u, const BundleTangent& y)
{
    const CanonicalForm theta(u);
    const std::size_t rows = algebra_dimension(u.n, u.r);
    const std::size_t cols = algebra_dimension(u.n, u.r + 1);
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t q = 0; q < cols; ++q) {
        out.col(static_cast<Eigen::Index>(q)) = theta.derivative(BundleTangent::coordinate(u.n, u.r, q), y).flatten();
    }
    return out;
}

namespace {

/// Flat position of (i, J) inside AlgebraVector::flatten for component order m = J.size().
std::size_t algebra_offset(int n, int i, const std::vector<int>& J)
{
    std::size_t start = 0;
    std::size_t block = static_cast<std::size_t>(n);
    for (std::size_t m = 0; m < J.size(); ++m) {
        start += block;
        block *= static_cast<std::size_t>(n);
    }
    std::size_t f = static_cast<std::size_t>(i);
    for (int j : J) f = f * static_cast<std::size_t>(n) + static_cast<std::size_t>(j);
    return start + f;
}

/// Index plan of one torsion type: out[o] += x[a] y[b] - y[a] x[b] for every product in the wedge sum.
struct TorsionPlan {
    int n = 0;
    int k = 0;                 ///< lower order of the result
    std::size_t dtheta_start;  ///< flat start of component k in an algebra vector
    struct Product {
        std::size_t out;
        std::size_t left;
        std::size_t right;
    };
    std::vector<Product> products;
};

TorsionPlan make_torsion_plan(const TorsionType& t, int n)
{
    TorsionPlan plan;
    plan.n = n;
    plan.k = t.k - 1;
    plan.dtheta_start = algebra_offset(n, 0, std::vector<int>(static_cast<std::size_t>(plan.k), 0));
    std::vector<int> left;
    std::vector<int> right;
    const LowerTensor shape(n, plan.k);
    for (const WedgeTerm& w : torsion_wedge_terms(t)) {
        for (int i = 0; i < n; ++i) {
            for_each_multi_index(n, plan.k, [&](const std::vector<int>& J) {
                const std::size_t out = shape.offset(i, J);
                for (int l = 0; l < n; ++l) {
                    fill_indices(w.left, J, l, left);
                    fill_indices(w.right, J, l, right);
                    plan.products.push_back({out, algebra_offset(n, i, left), algebra_offset(n, l, right)});
                }
            });
        }
    }
    return plan;
}

LowerTensor evaluate_plan(const TorsionPlan& plan, const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& d)
{
    LowerTensor out(plan.n, plan.k);
    for (std::size_t q = 0; q < out.size(); ++q) out[q] = d(static_cast<Eigen::Index>(plan.dtheta_start + q));
    for (const auto& p : plan.products) {
        const auto a = static_cast<Eigen::Index>(p.left);
        const auto b = static_cast<Eigen::Index>(p.right);
        out[p.out] += x(a) * y(b) - y(a) * x(b);
    }
    return out;
}

}  // namespace

LowerTensor torsion_from_values(const TorsionType& t, const AlgebraVector& theta_x, const AlgebraVector& theta_y,
                                const AlgebraVector& dtheta_xy)
{
    t.validate();
    if (t.k > theta_x.r - 1) throw DomainError("torsion order exceeds r - 1");
    return evaluate_plan(make_torsion_plan(t, theta_x.n), theta_x.flatten(), theta_y.flatten(), dtheta_xy.flatten());
}

LowerTensor torsion(const FrameCoords& u, const TorsionType& t, const BundleTangent& x, const BundleTangent& y)
{
    t.validate();
    if (t.k > u.r - 1) throw DomainError("torsion order exceeds r - 1");
    const CanonicalForm theta(u);
    return torsion_from_values(t, theta(x), theta(y), theta.exterior_derivative(x, y));
}

LowerTensor curvature(const FrameCoords& u, const BundleTangent& x, const BundleTangent& y)
{
    if (u.r < 2) throw DomainError("curvature needs r >= 2");
    const CanonicalForm theta(u);
    const Eigen::MatrixXd tx = to_matrix(component(theta(x), 1));
    const Eigen::MatrixXd ty = to_matrix(component(theta(y), 1));
    const Eigen::MatrixXd d = to_matrix(component(theta.exterior_derivative(x, y), 1));
    return from_matrix(d + (tx * ty - ty * tx));
}

LowerTensor structural_residual(const FrameCoords& u, int k, const BundleTangent& x, const BundleTangent& y, double tol)
{
    u.validate();
    const ClassicalCheck check = is_classical(u.fiber(), tol);
    if (!check.classical) throw DomainError("structural equations need a classical frame");
    TorsionType t{k, {}};
    for (int a = 1; a < k; ++a) t.p.push_back(a + 1);
    return torsion(u, t, x, y);
}

std::vector<BundleTangent> coordinate_directions(int n, int r)
{
    std::vector<BundleTangent> out;
    const std::size_t size = algebra_dimension(n, r + 1);
    for (std::size_t q = 0; q < size; ++q) out.push_back(BundleTangent::coordinate(n, r, q));
    return out;
}

std::vector<BundleTangent> symmetric_coordinate_directions(int n, int r)
{
    std::vector<BundleTangent> out;
    for (int i = 0; i < n; ++i) {
        BundleTangent x = BundleTangent::zero(n, r);
        x.base[static_cast<std::size_t>(i)] = 1.0;
        out.push_back(std::move(x));
    }
    for (int k = 1; k <= r; ++k) {
        for (int i = 0; i < n; ++i) {
            for_each_multi_index(n, k, [&](const std::vector<int>& J) {
                if (!std::is_sorted(J.begin(), J.end())) return;
                BundleTangent x = BundleTangent::zero(n, r);
                LowerTensor unit(n, k);
                unit.at(i, J) = 1.0;
                x.tensors[static_cast<std::size_t>(k - 1)] = symmetrize(unit);
                out.push_back(std::move(x));
            });
        }
    }
    return out;
}

TorsionSweep torsion_sweep(const FrameCoords& u, const std::vector<BundleTangent>& directions)
{
    u.validate();
    TorsionSweep sweep;
    if (u.r < 2) return sweep;
    const CanonicalForm theta(u);
    std::vector<AlgebraVector> values;
    values.reserve(directions.size());
    for (const auto& d : directions) values.push_back(theta(d));
    std::vector<Eigen::VectorXd> flat;
    for (const auto& v : values) flat.push_back(v.flatten());
    std::vector<TorsionType> types;
    std::vector<TorsionPlan> plans;
    for (int k = 1; k <= u.r - 1; ++k) {
        for (auto& t : enumerate_torsion_types(k)) {
            sweep.per_type.emplace_back(t.label(), 0.0);
            plans.push_back(make_torsion_plan(t, u.n));
            types.push_back(std::move(t));
        }
    }
    for (std::size_t a = 0; a < directions.size(); ++a) {
        for (std::size_t b = a + 1; b < directions.size(); ++b) {
            const AlgebraVector dtheta = theta.exterior_derivative(directions[a], directions[b], values[a], values[b]);
            const Eigen::VectorXd dflat = dtheta.flatten();
            sweep.scale = std::max(sweep.scale, dflat.cwiseAbs().maxCoeff());
            for (std::size_t q = 0; q < types.size(); ++q) {
                const TorsionType& t = types[q];
                const double m = max_abs(evaluate_plan(plans[q], flat[a], flat[b], dflat));
                auto& slot = sweep.per_type[q].second;
                slot = std::max(slot, m);
                if (m > sweep.max) {
                    sweep.max = m;
                    sweep.witness = t.label();
                    sweep.pair = {static_cast<int>(a), static_cast<int>(b)};
                }
            }
        }
    }
    return sweep;
}

RealizabilityReport realizability_report(const FrameCoords& u, double tol)
{
    u.validate();
    RealizabilityReport rep;
    rep.torsions = torsion_sweep(u, symmetric_coordinate_directions(u.n, u.r));
    rep.max_torsion = rep.torsions.max;
    rep.torsion_verdict = rep.max_torsion <= tol * std::max(1.0, rep.torsions.scale);

    const ClassicalCheck check = is_classical(u.fiber(), tol);
    rep.max_asymmetry = check.witness.gap;
    rep.asymmetry_order = check.order;
    rep.asymmetry_witness = check.witness;
    rep.symmetry_verdict = check.classical;
    rep.realizable = rep.torsion_verdict && rep.symmetry_verdict;
    return rep;
}

RealizabilityReport realizability_check(const FrameCoords& u, double tol)
{
    RealizabilityReport rep = realizability_report(u, tol);
    if (rep.torsion_verdict != rep.symmetry_verdict) {
        std::ostringstream os;
        os << "torsion verdict and symmetry verdict disagree (max torsion " << rep.max_torsion << ", max asymmetry "
           << rep.max_asymmetry << ")";
        throw ConsistencyError(os.str());
    }
    return rep;
}

double schwarzian(double f1, double f2, double f3)
{
    if (f1 == 0.0) throw DomainError("Schwarzian needs a nonzero first derivative");
    const double q = f2 / f1;
    return f3 / f1 - 1.5 * q * q;
}

double schwarzian(const FrameCoords& u)
{
    u.validate();
    if (u.n != 1 || u.r < 3) throw DomainError("Schwarzian needs a one-dimensional frame of order at least 3");
    return schwarzian(u.tensors[0][0], u.tensors[1][0], u.tensors[2][0]);
}

}  // namespace ff
