#include "antbif/linearize.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "antbif/errors.hpp"
#include "antbif/pde.hpp"

namespace antbif {

namespace {

using Vec = Eigen::VectorXd;

Vec as_vec(const Field& f) { return Eigen::Map<const Vec>(f.data().data(), static_cast<Eigen::Index>(f.data().size())); }

Field as_field(const Vec& v, const GridDims& d)
{
    Field f(d);
    Eigen::Map<Vec>(f.data().data(), v.size()) = v;
    return f;
}

class Linearisation {
public:
    Linearisation(const Field& f, double chi, const ModelParams& p, const LinearizeOptions& opt)
        : dyn_(p, chi, f.dims(), opt.dealias), dims_(f.dims()), opt_(opt)
    {
        F0_ = dyn_.to_spectral(f);
        Field u(f.dims());
        for (double& x : u.data())
            x = 1.0 / two_pi;
        U0_ = dyn_.to_spectral(u);
        scale_ = std::max(f.max_abs(), 1.0);
    }

    Vec project(const Vec& v) const
    {
        Field g = as_field(v, dims_);
        if (opt_.even_only)
            g = 0.5 * (g + antipodal_reflect(g));
        const double mean = g.mass() / two_pi;
        for (double& x : g.data())
            x -= mean;
        return as_vec(g);
    }

    Vec jacobian(const Vec& v) const
    {
        const double eps = opt_.eps_rel * scale_ / std::max(v.cwiseAbs().maxCoeff(), 1e-300);
        std::vector<cplx> V = dyn_.to_spectral(as_field(v, dims_));
        std::vector<cplx> Fp(F0_), Fm(F0_), Rp, Rm;
        for (size_t i = 0; i < V.size(); ++i) {
            Fp[i] += eps * V[i];
            Fm[i] -= eps * V[i];
        }
        dyn_.rhs(Fp, Rp);
        dyn_.rhs(Fm, Rm);
        for (size_t i = 0; i < Rp.size(); ++i)
            Rp[i] = (Rp[i] - Rm[i]) / (2.0 * eps);
        return as_vec(dyn_.to_physical(Rp));
    }

    Vec flow(const Vec& v)
    {
        const double eps = opt_.eps_rel * scale_ / std::max(v.cwiseAbs().maxCoeff(), 1e-300);
        std::vector<cplx> V = dyn_.to_spectral(as_field(v, dims_));
        std::vector<cplx> Fp(F0_), Fm(F0_);
        for (size_t i = 0; i < V.size(); ++i) {
            Fp[i] += eps * V[i];
            Fm[i] -= eps * V[i];
        }
        for (int s = 0; s < opt_.steps_per_vector; ++s) {
            dyn_.step(Fp, opt_.dt, Scheme::imex_linear);
            dyn_.step(Fm, opt_.dt, Scheme::imex_linear);
        }
        for (size_t i = 0; i < Fp.size(); ++i)
            Fp[i] = (Fp[i] - Fm[i]) / (2.0 * eps);
        return as_vec(dyn_.to_physical(Fp));
    }

    // (I - h L0)^{-1} v with L0 the linearisation about the uniform state
    Vec smooth(const Vec& v, double h)
    {
        const double eps = 1e-6 / std::max(v.cwiseAbs().maxCoeff(), 1e-300);
        std::vector<cplx> V = dyn_.to_spectral(as_field(v, dims_));
        std::vector<cplx> Fp(U0_), Fm(U0_);
        for (size_t i = 0; i < V.size(); ++i) {
            Fp[i] += eps * V[i];
            Fm[i] -= eps * V[i];
        }
        dyn_.step(Fp, h, Scheme::imex_linear);
        dyn_.step(Fm, h, Scheme::imex_linear);
        for (size_t i = 0; i < Fp.size(); ++i)
            Fp[i] = (Fp[i] - Fm[i]) / (2.0 * eps);
        return as_vec(dyn_.to_physical(Fp));
    }

private:
    mutable Dynamics dyn_;
    GridDims dims_;
    LinearizeOptions opt_;
    std::vector<cplx> F0_, U0_;
    double scale_ = 1.0;
};

}  // namespace

Field directional_derivative(const Field& f, const Field& v, double chi, const ModelParams& p, double eps_rel,
                             bool dealias)
{
    require(f.dims() == v.dims(), "directional_derivative: grid mismatch");
    const double eps = eps_rel * std::max(f.max_abs(), 1.0) / std::max(v.max_abs(), 1e-300);
    Field a = rhs_F(f + eps * v, chi, p, dealias);
    a -= rhs_F(f - eps * v, chi, p, dealias);
    a *= 1.0 / (2.0 * eps);
    return a;
}

LinearizeResult linearize_about(const Field& f, double chi, const ModelParams& p, const LinearizeOptions& opt)
{
    require(opt.krylov_dim >= 2 && opt.steps_per_vector >= 1 && opt.dt > 0.0, "linearize_about: invalid options");
    Linearisation lin(f, chi, p, opt);
    const Eigen::Index n = static_cast<Eigen::Index>(f.dims().size());
    const int m = opt.krylov_dim;

    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> normal;
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = normal(rng);

    // Krylov basis, twice-orthogonalised Gram-Schmidt
    Eigen::MatrixXd Q(n, m);
    int cols = 0;
    v = lin.project(v);
    for (int j = 0; j < m; ++j) {
        for (int pass = 0; pass < 2; ++pass)
            if (cols > 0)
                v -= Q.leftCols(cols) * (Q.leftCols(cols).transpose() * v);
        const double nv = v.norm();
        if (!(nv > 1e-12))
            break;
        Q.col(cols++) = v / nv;
        if (j + 1 < m)
            v = lin.project(lin.flow(Q.col(cols - 1)));
    }
    if (cols == 0)
        throw NumericalError("linearize_about: empty Krylov space");

    struct Ritz {
        cplx mu;
        double res;
        Eigen::VectorXcd r;
    };
    Eigen::MatrixXd JQ(n, cols);
    for (int j = 0; j < cols; ++j)
        JQ.col(j) = lin.project(lin.jacobian(Q.col(j)));

    std::vector<Ritz> ritz;
    for (int it = 0;; ++it) {
        const Eigen::MatrixXd H = Q.leftCols(cols).transpose() * JQ.leftCols(cols);
        Eigen::EigenSolver<Eigen::MatrixXd> es(H);
        if (es.info() != Eigen::Success)
            throw NumericalError("linearize_about: Ritz eigenproblem failed");
        ritz.clear();
        const Eigen::MatrixXcd Qc = Q.leftCols(cols).cast<cplx>();
        const Eigen::MatrixXcd JQc = JQ.leftCols(cols).cast<cplx>();
        for (int i = 0; i < cols; ++i) {
            const cplx mu = es.eigenvalues()(i);
            const Eigen::VectorXcd y = es.eigenvectors().col(i);
            const Eigen::VectorXcd x = Qc * y;
            const double nx = std::max(x.norm(), 1e-300);
            Eigen::VectorXcd r = (JQc * y - mu * x) / nx;
            ritz.push_back({mu, r.norm() / std::max(1.0, std::abs(mu)), std::move(r)});
        }
        std::sort(ritz.begin(), ritz.end(), [](const Ritz& a, const Ritz& b) { return a.mu.real() > b.mu.real(); });
        if (it == opt.refine_steps || ritz.front().res < 0.1 * opt.tol)
            break;

        // Davidson-type enrichment: residual of the rightmost pair, preconditioned about the uniform state
        Q.conservativeResize(Eigen::NoChange, cols + 2);
        JQ.conservativeResize(Eigen::NoChange, cols + 2);
        int added = 0;
        for (const Vec& w0 : {Vec(ritz.front().r.real()), Vec(ritz.front().r.imag())}) {
            Vec w = lin.project(lin.smooth(w0, opt.precond_dt));
            for (int pass = 0; pass < 2; ++pass)
                w -= Q.leftCols(cols) * (Q.leftCols(cols).transpose() * w);
            const double nw = w.norm();
            if (!(nw > 1e-12 * std::max(1.0, w0.norm())))
                continue;
            Q.col(cols) = w / nw;
            JQ.col(cols) = lin.project(lin.jacobian(Q.col(cols)));
            ++cols;
            ++added;
        }
        if (added == 0)
            break;
    }

    LinearizeResult out;
    for (const Ritz& r : ritz) {
        out.eigenvalues.push_back(r.mu);
        out.residuals.push_back(r.res);
    }
    auto lead = std::find_if(ritz.begin(), ritz.end(), [&](const Ritz& r) { return r.res < opt.tol; });
    out.converged = lead != ritz.end();
    if (!out.converged)
        lead = ritz.begin();
    out.leading = lead->mu;
    out.leading_residual = lead->res;
    return out;
}

}  // namespace antbif
