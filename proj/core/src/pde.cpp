#include "antbif/pde.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>

#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "antbif/errors.hpp"
#include "antbif/fft.hpp"

namespace antbif {

const char* to_string(Scheme s) { return s == Scheme::imex_linear ? "imex_linear" : "imex_diffusion"; }

Scheme scheme_from_string(const std::string& s)
{
    if (s == "imex_diffusion")
        return Scheme::imex_diffusion;
    if (s == "imex_linear")
        return Scheme::imex_linear;
    throw ValidationError("unknown scheme '" + s + "' (expected imex_diffusion or imex_linear)");
}

const char* to_string(Symmetry s)
{
    switch (s) {
    case Symmetry::even:
        return "even";
    case Symmetry::lane:
        return "lane";
    case Symmetry::spot:
        return "spot";
    default:
        return "none";
    }
}

void SolverConfig::validate() const
{
    require(dims.n1 > 0 && dims.n2 > 0 && dims.nt >= 4 && dims.nt % 4 == 0,
            "solver: grid needs positive sizes and n_theta divisible by 4");
    require(dt > 0.0 && std::isfinite(dt), "solver: dt must be positive");
    require(t_max > 0.0, "solver: t_max must be positive");
    require(residual_tol > 0.0, "solver: residual_tol must be positive");
    require(check_every >= 1 && project_every >= 1, "solver: check/project cadence must be >= 1");
}

std::vector<double> chemical_solve(const std::vector<double>& rho, int n1, int n2, const ModelParams& p)
{
    require(rho.size() == static_cast<size_t>(n1) * n2, "chemical_solve: size mismatch");
    std::vector<cplx> buf(rho.begin(), rho.end());
    Fft3 fft(n1, n2, 1);
    fft.forward(buf.data());
    const double norm = 1.0 / (static_cast<double>(n1) * n2);
    for (int a = 0; a < n1; ++a)
        for (int b = 0; b < n2; ++b) {
            const int l1 = a < (n1 + 1) / 2 ? a : a - n1;
            const int l2 = b < (n2 + 1) / 2 ? b : b - n2;
            buf[static_cast<size_t>(a) * n2 + b] *= norm / elliptic_multiplier(p, {l1, l2});
        }
    fft.backward(buf.data());
    std::vector<double> c(buf.size());
    for (size_t i = 0; i < buf.size(); ++i)
        c[i] = buf[i].real();
    return c;
}

namespace {

// FFT index -> signed wave number, Nyquist mapped to -n/2.
int signed_mode(int i, int n) { return i < n / 2 ? i : i - n; }
int fft_index(int q, int n) { return q >= 0 ? q : q + n; }

struct XMode {
    int l1 = 0, l2 = 0;
    bool nyquist = false;
    bool in_box = true;
    double diff = 0.0;  // 4 pi^2 sigma_x |l|^2
    cplx up = 0.0, dn = 0.0;
    std::array<cplx, 5> bm{};  // theta-modes -2..2 of B_l

    // imex_linear factorisation
    std::vector<cplx> dl, d, du, du2, z;
    std::vector<lapack_int> ipiv;
    cplx denom = 1.0;
    bool has_rank1 = false;
};

}  // namespace

struct Dynamics::Impl {
    ModelParams p;
    double chi = 0.0;
    GridDims dims;
    bool dealias = true;
    size_t size = 0;
    int nx = 0;
    Fft3 fft;
    std::vector<XMode> xm;
    std::vector<double> theta_diff;  // sigma_theta n^2 per FFT index
    std::vector<char> theta_box;
    mutable std::vector<cplx> bufB, bufF, bufP;

    Scheme cached_scheme = Scheme::imex_diffusion;
    double cached_dt = -1.0;
    double cached_fbar = 0.0;

    Impl(const ModelParams& p_, double chi_, const GridDims& d, bool de)
        : p(p_), chi(chi_), dims(d), dealias(de), size(d.size()), nx(d.n1 * d.n2), fft(d.n1, d.n2, d.nt)
    {
        const int cut1 = d.n1 / 3, cut2 = d.n2 / 3, cutt = d.nt / 3;
        xm.resize(nx);
        for (int a = 0; a < d.n1; ++a)
            for (int b = 0; b < d.n2; ++b) {
                XMode& m = xm[static_cast<size_t>(a) * d.n2 + b];
                m.l1 = signed_mode(a, d.n1);
                m.l2 = signed_mode(b, d.n2);
                m.nyquist = (d.n1 % 2 == 0 && a == d.n1 / 2) || (d.n2 % 2 == 0 && b == d.n2 / 2);
                m.in_box = std::abs(m.l1) <= cut1 && std::abs(m.l2) <= cut2;
                m.diff = 4.0 * pi * pi * p.sigma_x * (m.l1 * m.l1 + m.l2 * m.l2);
                if (m.nyquist || (m.l1 == 0 && m.l2 == 0))
                    continue;
                m.up = cplx(0.0, pi * p.lambda) * cplx(m.l1, -m.l2);
                m.dn = cplx(0.0, pi * p.lambda) * cplx(m.l1, m.l2);
                const std::vector<cplx> bm = multiplier_B({m.l1, m.l2}, p, 8).modes();
                for (int q = -2; q <= 2; ++q)
                    m.bm[q + 2] = bm[q + 4];
            }
        theta_diff.resize(d.nt);
        theta_box.resize(d.nt);
        for (int j = 0; j < d.nt; ++j) {
            const int q = signed_mode(j, d.nt);
            theta_diff[j] = p.sigma_theta * q * q;
            theta_box[j] = std::abs(q) <= cutt && q != -d.nt / 2;
        }
        bufB.resize(size);
        bufF.resize(size);
        bufP.resize(size);
    }

    size_t base(int x) const { return static_cast<size_t>(x) * dims.nt; }

    void add_transport(const std::vector<cplx>& F, std::vector<cplx>& out) const
    {
        const int nt = dims.nt;
        for (int x = 0; x < nx; ++x) {
            const XMode& m = xm[x];
            if (m.up == 0.0 && m.dn == 0.0)
                continue;
            const cplx* f = F.data() + base(x);
            cplx* o = out.data() + base(x);
            for (int q = -nt / 2 + 1; q <= nt / 2 - 1; ++q) {
                cplx s = 0.0;
                if (q - 1 >= -nt / 2 + 1)
                    s += m.up * f[fft_index(q - 1, nt)];
                if (q + 1 <= nt / 2 - 1)
                    s += m.dn * f[fft_index(q + 1, nt)];
                o[fft_index(q, nt)] -= s;
            }
        }
    }

    void add_linear_chemotaxis(const std::vector<cplx>& F, std::vector<cplx>& out, double fbar) const
    {
        const int nt = dims.nt;
        for (int x = 0; x < nx; ++x) {
            const XMode& m = xm[x];
            const cplx rho = two_pi * F[base(x)];
            if (rho == 0.0)
                continue;
            for (int q = -2; q <= 2; ++q)
                out[base(x) + fft_index(q, nt)] -= chi * fbar * cplx(0.0, q) * m.bm[q + 2] * rho;
        }
    }

    // -chi d_th (B[f] (f - fbar)), products on the grid
    void add_nonlinear(const std::vector<cplx>& F, std::vector<cplx>& out) const
    {
        if (chi == 0.0)
            return;
        const int nt = dims.nt;
        std::fill(bufB.begin(), bufB.end(), cplx(0.0));
        for (int x = 0; x < nx; ++x) {
            const XMode& m = xm[x];
            if (dealias && !m.in_box)
                continue;
            const cplx rho = two_pi * F[base(x)];
            for (int q = -2; q <= 2; ++q)
                bufB[base(x) + fft_index(q, nt)] = m.bm[q + 2] * rho;
        }
        for (int x = 0; x < nx; ++x) {
            const bool keep_x = !dealias || xm[x].in_box;
            for (int j = 0; j < nt; ++j) {
                const bool keep = keep_x && (dealias ? theta_box[j] : j != nt / 2);
                bufF[base(x) + j] = keep ? F[base(x) + j] : cplx(0.0);
            }
        }
        bufF[0] = 0.0;
        fft.backward(bufB.data());
        fft.backward(bufF.data());
        for (size_t i = 0; i < size; ++i) {
            const double v = bufB[i].real() * bufF[i].real();
            if (!std::isfinite(v))
                throw NumericalError("rhs: non-finite value in the chemotactic flux");
            bufP[i] = v;
        }
        fft.forward(bufP.data());
        const double norm = 1.0 / static_cast<double>(size);
        for (int x = 0; x < nx; ++x) {
            if (dealias && !xm[x].in_box)
                continue;
            for (int j = 0; j < nt; ++j) {
                if (dealias ? !theta_box[j] : j == nt / 2)
                    continue;
                const int q = signed_mode(j, nt);
                out[base(x) + j] -= chi * cplx(0.0, q) * bufP[base(x) + j] * norm;
            }
        }
    }

    void factorise(double dt, double fbar)
    {
        const int nt = dims.nt;
        const int n = nt - 1;
        const int i0 = nt / 2 - 1;
        for (int x = 0; x < nx; ++x) {
            XMode& m = xm[x];
            m.d.assign(n, 0.0);
            m.dl.assign(n - 1, dt * m.up);
            m.du.assign(n - 1, dt * m.dn);
            m.du2.assign(n - 2, 0.0);
            m.ipiv.assign(n, 0);
            for (int i = 0; i < n; ++i) {
                const int q = i - i0;
                m.d[i] = 1.0 + dt * (m.diff + p.sigma_theta * q * q);
            }
            if (LAPACKE_zgttrf(n, m.dl.data(), m.d.data(), m.du.data(), m.du2.data(), m.ipiv.data()) != 0)
                throw NumericalError("step: implicit mode system is singular");
            m.z.assign(n, 0.0);
            m.has_rank1 = false;
            for (int q = -2; q <= 2; ++q) {
                const cplx c = dt * chi * fbar * two_pi * cplx(0.0, q) * m.bm[q + 2];
                if (c != 0.0)
                    m.has_rank1 = true;
                m.z[q + i0] = c;
            }
            if (m.has_rank1) {
                LAPACKE_zgttrs(LAPACK_COL_MAJOR, 'N', n, 1, m.dl.data(), m.d.data(), m.du.data(), m.du2.data(),
                               m.ipiv.data(), m.z.data(), n);
                m.denom = 1.0 + m.z[i0];
                if (std::abs(m.denom) < 1e-12)
                    throw NumericalError("step: implicit chemotactic update is singular; reduce dt");
            }
        }
    }

    void solve_linear(std::vector<cplx>& F) const
    {
        const int nt = dims.nt;
        const int n = nt - 1;
        const int i0 = nt / 2 - 1;
        std::vector<cplx> r(n);
        for (int x = 0; x < nx; ++x) {
            const XMode& m = xm[x];
            cplx* f = F.data() + base(x);
            for (int i = 0; i < n; ++i)
                r[i] = f[fft_index(i - i0, nt)];
            LAPACKE_zgttrs(LAPACK_COL_MAJOR, 'N', n, 1, m.dl.data(), m.d.data(), m.du.data(), m.du2.data(),
                           m.ipiv.data(), r.data(), n);
            if (m.has_rank1) {
                const cplx s = r[i0] / m.denom;
                for (int i = 0; i < n; ++i)
                    r[i] -= s * m.z[i];
            }
            for (int i = 0; i < n; ++i)
                f[fft_index(i - i0, nt)] = r[i];
            f[nt / 2] /= 1.0 + cached_dt * (m.diff + theta_diff[nt / 2]);
        }
    }
};

Dynamics::Dynamics(const ModelParams& p, double chi, const GridDims& dims, bool dealias)
{
    p.validate();
    require(dims.n1 > 0 && dims.n2 > 0 && dims.nt >= 8 && dims.nt % 2 == 0, "Dynamics: invalid grid");
    impl_ = std::make_unique<Impl>(p, chi, dims, dealias);
}

Dynamics::~Dynamics() = default;

const GridDims& Dynamics::dims() const { return impl_->dims; }
double Dynamics::chi() const { return impl_->chi; }

std::vector<cplx> Dynamics::to_spectral(const Field& f) const
{
    require(f.dims() == impl_->dims, "Dynamics: grid mismatch");
    std::vector<cplx> F(f.data().begin(), f.data().end());
    impl_->fft.forward(F.data());
    const double norm = 1.0 / static_cast<double>(impl_->size);
    for (auto& x : F)
        x *= norm;
    return F;
}

Field Dynamics::to_physical(const std::vector<cplx>& F) const
{
    std::vector<cplx> buf = F;
    impl_->fft.backward(buf.data());
    Field f(impl_->dims);
    for (size_t i = 0; i < buf.size(); ++i)
        f.data()[i] = buf[i].real();
    return f;
}

void Dynamics::rhs(const std::vector<cplx>& F, std::vector<cplx>& out) const
{
    const Impl& m = *impl_;
    require(F.size() == m.size, "rhs: size mismatch");
    out.resize(m.size);
    for (int x = 0; x < m.nx; ++x)
        for (int j = 0; j < m.dims.nt; ++j) {
            const size_t i = m.base(x) + j;
            out[i] = -(m.xm[x].diff + m.theta_diff[j]) * F[i];
        }
    m.add_transport(F, out);
    m.add_linear_chemotaxis(F, out, F[0].real());
    m.add_nonlinear(F, out);
}

double Dynamics::max_stable_dt(Scheme scheme) const
{
    if (scheme == Scheme::imex_linear)
        return INFINITY;
    const Impl& m = *impl_;
    const double dx = 1.0 / std::max(m.dims.n1, m.dims.n2);
    return 0.5 * std::min(dx / m.p.lambda, 2.0 * m.p.sigma_x / (m.p.lambda * m.p.lambda));
}

void Dynamics::step(std::vector<cplx>& F, double dt, Scheme scheme)
{
    Impl& m = *impl_;
    require(F.size() == m.size, "step: size mismatch");
    require(dt > 0.0, "step: dt must be positive");
    const double fbar = F[0].real();
    std::vector<cplx> E(m.size, 0.0);
    if (scheme == Scheme::imex_diffusion) {
        if (dt > max_stable_dt(scheme) * (1.0 + 1e-12))
            throw ValidationError("step: dt = " + std::to_string(dt) + " violates the stability bound " +
                                  std::to_string(max_stable_dt(scheme)));
        m.add_transport(F, E);
        m.add_linear_chemotaxis(F, E, fbar);
        m.add_nonlinear(F, E);
        for (int x = 0; x < m.nx; ++x)
            for (int j = 0; j < m.dims.nt; ++j) {
                const size_t i = m.base(x) + j;
                F[i] = (F[i] + dt * E[i]) / (1.0 + dt * (m.xm[x].diff + m.theta_diff[j]));
            }
        return;
    }
    if (m.cached_scheme != scheme || m.cached_dt != dt || m.cached_fbar != fbar) {
        m.factorise(dt, fbar);
        m.cached_scheme = scheme;
        m.cached_dt = dt;
        m.cached_fbar = fbar;
    }
    m.add_nonlinear(F, E);
    for (size_t i = 0; i < m.size; ++i)
        F[i] += dt * E[i];
    m.solve_linear(F);
}

Field rhs_F(const Field& f, double chi, const ModelParams& p, bool dealias)
{
    Dynamics dyn(p, chi, f.dims(), dealias);
    std::vector<cplx> out;
    dyn.rhs(dyn.to_spectral(f), out);
    return dyn.to_physical(out);
}

Field step_imex(const Field& f, double chi, const ModelParams& p, double dt, Scheme scheme, bool dealias)
{
    Dynamics dyn(p, chi, f.dims(), dealias);
    std::vector<cplx> F = dyn.to_spectral(f);
    dyn.step(F, dt, scheme);
    return dyn.to_physical(F);
}

SeedKind seed_from_string(const std::string& s)
{
    if (s == "uniform")
        return SeedKind::uniform;
    if (s == "lane")
        return SeedKind::lane;
    if (s == "spot")
        return SeedKind::spot;
    if (s == "file")
        return SeedKind::file;
    throw ValidationError("unknown seed '" + s + "' (expected uniform, lane, spot or file)");
}

Symmetry symmetry_for(SeedKind kind)
{
    switch (kind) {
    case SeedKind::lane:
        return Symmetry::lane;
    case SeedKind::spot:
        return Symmetry::spot;
    case SeedKind::uniform:
        return Symmetry::even;
    default:
        return Symmetry::none;
    }
}

Field seed_initial(SeedKind kind, double eps, const KernelBasis* basis, const GridDims& dims, const std::string& path)
{
    Field f;
    if (kind == SeedKind::file) {
        std::ifstream is(path, std::ios::binary);
        require(static_cast<bool>(is), "seed_initial: cannot open '" + path + "'");
        f = Field::read_binary(is);
    } else {
        f = Field(dims, 1.0 / two_pi);
        if (kind != SeedKind::uniform) {
            require(basis != nullptr, "seed_initial: lane/spot seeds need a kernel basis");
            f += eps * basis->phi1.to_field(dims);
            if (kind == SeedKind::spot)
                f += eps * basis->phi2.to_field(dims);
        }
    }
    if (!(f.min() > 0.0))
        throw ValidationError("seed_initial: seed is not positive; reduce eps");
    return f;
}

Field project_symmetry(const Field& f, Symmetry s)
{
    if (s == Symmetry::none)
        return f;
    Field g = 0.5 * (f + antipodal_reflect(f));
    if (s == Symmetry::spot)
        return 0.5 * (g + swap(g));
    if (s == Symmetry::lane) {
        const GridDims& d = g.dims();
        for (int a = 0; a < d.n1; ++a)
            for (int j = 0; j < d.nt; ++j) {
                double m = 0.0;
                for (int b = 0; b < d.n2; ++b)
                    m += g(a, b, j);
                m /= d.n2;
                for (int b = 0; b < d.n2; ++b)
                    g(a, b, j) = m;
            }
    }
    return g;
}

double amplitude_mode(const Field& f, const KernelBasis& basis)
{
    return std::abs(basis.n_k * inner(f, basis.psi1.to_field(f.dims())));
}

double amplitude_l2(const Field& f)
{
    Field g = f;
    const double mean = f.mass() / two_pi;
    for (double& v : g.data())
        v -= mean;
    return g.l2();
}

EvolveResult evolve_to_stationary(const Field& f0, double chi, const ModelParams& p, const SolverConfig& cfg,
                                  const KernelBasis* basis)
{
    cfg.validate();
    require(f0.dims() == cfg.dims, "evolve: seed grid differs from the solver grid");
    const auto start = std::chrono::steady_clock::now();
    Dynamics dyn(p, chi, cfg.dims, cfg.dealias);
    if (cfg.scheme == Scheme::imex_diffusion && cfg.dt > dyn.max_stable_dt(cfg.scheme) * (1.0 + 1e-12))
        throw ValidationError("evolve: dt = " + std::to_string(cfg.dt) + " violates the stability bound " +
                              std::to_string(dyn.max_stable_dt(cfg.scheme)));

    std::vector<cplx> F = dyn.to_spectral(project_symmetry(f0, cfg.symmetry));
    Field psi;
    if (basis)
        psi = basis->psi1.to_field(cfg.dims);

    EvolveResult res;
    std::vector<cplx> R;
    double t = 0.0;
    int last_record = -1;
    auto record = [&]() {
        dyn.rhs(F, R);
        const double r = dyn.to_physical(R).max_abs();
        const Field cur = dyn.to_physical(F);
        if (!std::isfinite(r) || !(cur.max_abs() <= cfg.divergence_bound))
            throw NumericalError("evolve: solution diverged at t = " + std::to_string(t) +
                                 " (|f|_inf = " + std::to_string(cur.max_abs()) + ")");
        res.t.push_back(t);
        res.residual.push_back(r);
        res.mass.push_back(cur.mass());
        res.min_f.push_back(cur.min());
        res.amplitude.push_back(basis ? std::abs(basis->n_k * inner(cur, psi)) : 0.0);
        last_record = res.steps;
        return r;
    };

    while (true) {
        if (res.steps % cfg.check_every == 0 && record() < cfg.residual_tol) {
            res.converged = true;
            break;
        }
        if (t >= cfg.t_max - 1e-9 * cfg.dt)
            break;
        dyn.step(F, cfg.dt, cfg.scheme);
        ++res.steps;
        t = res.steps * cfg.dt;
        if (res.steps % cfg.project_every == 0)
            F = dyn.to_spectral(project_symmetry(dyn.to_physical(F), cfg.symmetry));
    }
    if (last_record != res.steps && record() < cfg.residual_tol)
        res.converged = true;
    res.final_field = dyn.to_physical(F);
    res.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

void write_diagnostics_csv(const EvolveResult& r, std::ostream& os)
{
    os << "t,residual,mass,min_f,amplitude\n";
    os.precision(12);
    for (size_t i = 0; i < r.t.size(); ++i)
        os << r.t[i] << ',' << r.residual[i] << ',' << r.mass[i] << ',' << r.min_f[i] << ',' << r.amplitude[i]
           << '\n';
}

}  // namespace antbif
