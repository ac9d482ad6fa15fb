#include "antbif/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>

#include "antbif/errors.hpp"
#include "antbif/fft.hpp"

namespace antbif {

namespace {

int wrap(int i, int n) { return ((i % n) + n) % n; }

double cell(const GridDims& d) { return two_pi / (static_cast<double>(d.n1) * d.n2 * d.nt); }

}  // namespace

Field::Field(const GridDims& dims, double fill) : dims_(dims), v_(dims.size(), fill)
{
    require(dims.n1 > 0 && dims.n2 > 0 && dims.nt >= 4 && dims.nt % 2 == 0, "Field: invalid grid dimensions");
}

double Field::mass() const
{
    // pairwise summation keeps the mass diagnostic reproducible at 1e-16
    std::vector<double> buf = v_;
    size_t n = buf.size();
    while (n > 1) {
        const size_t half = n / 2;
        for (size_t i = 0; i < half; ++i)
            buf[i] = buf[2 * i] + buf[2 * i + 1];
        if (n % 2)
            buf[half] = buf[n - 1];
        n = half + n % 2;
    }
    return (buf.empty() ? 0.0 : buf[0]) * cell(dims_);
}

double Field::max_abs() const
{
    double m = 0.0;
    for (double x : v_)
        m = std::max(m, std::abs(x));
    return m;
}

double Field::min() const { return v_.empty() ? 0.0 : *std::min_element(v_.begin(), v_.end()); }

double Field::l2() const { return std::sqrt(inner(*this, *this)); }

Field& Field::operator+=(const Field& o)
{
    require(o.dims_ == dims_, "Field: grid mismatch");
    for (size_t i = 0; i < v_.size(); ++i)
        v_[i] += o.v_[i];
    return *this;
}

Field& Field::operator-=(const Field& o)
{
    require(o.dims_ == dims_, "Field: grid mismatch");
    for (size_t i = 0; i < v_.size(); ++i)
        v_[i] -= o.v_[i];
    return *this;
}

Field& Field::operator*=(double s)
{
    for (double& x : v_)
        x *= s;
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }

double inner(const Field& f, const Field& g)
{
    require(f.dims() == g.dims(), "inner: grid mismatch");
    double s = 0.0;
    const auto& a = f.data();
    const auto& b = g.data();
    for (size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s * cell(f.dims());
}

void Field::write_binary(std::ostream& os) const
{
    const char magic[8] = {'A', 'N', 'T', 'F', 'L', 'D', '0', '1'};
    os.write(magic, 8);
    const std::int32_t d[3] = {dims_.n1, dims_.n2, dims_.nt};
    os.write(reinterpret_cast<const char*>(d), sizeof(d));
    os.write(reinterpret_cast<const char*>(v_.data()), static_cast<std::streamsize>(v_.size() * sizeof(double)));
}

Field Field::read_binary(std::istream& is)
{
    char magic[8];
    is.read(magic, 8);
    if (!is || std::string(magic, 8) != "ANTFLD01")
        throw ValidationError("read_binary: not a field snapshot");
    std::int32_t d[3];
    is.read(reinterpret_cast<char*>(d), sizeof(d));
    Field f(GridDims{d[0], d[1], d[2]});
    is.read(reinterpret_cast<char*>(f.v_.data()), static_cast<std::streamsize>(f.v_.size() * sizeof(double)));
    if (!is)
        throw ValidationError("read_binary: truncated snapshot");
    return f;
}

void Field::write_density_csv(std::ostream& os) const
{
    os << "x1,x2,rho\n";
    os.precision(17);
    for (int a = 0; a < dims_.n1; ++a)
        for (int b = 0; b < dims_.n2; ++b) {
            double s = 0.0;
            for (int j = 0; j < dims_.nt; ++j)
                s += (*this)(a, b, j);
            os << static_cast<double>(a) / dims_.n1 << ',' << static_cast<double>(b) / dims_.n2 << ','
               << s * two_pi / dims_.nt << '\n';
        }
}

const ThetaFun& ModalField::at(const IVec2& l) const
{
    auto it = m_.find(l);
    require(it != m_.end(), "ModalField: mode not present");
    return it->second;
}

ThetaFun ModalField::get(const IVec2& l) const
{
    auto it = m_.find(l);
    return it == m_.end() ? ThetaFun(nt_) : it->second;
}

void ModalField::set(const IVec2& l, ThetaFun g)
{
    require(g.size() == nt_, "ModalField: theta grid mismatch");
    m_[l] = std::move(g);
}

void ModalField::accumulate(const IVec2& l, const ThetaFun& g)
{
    require(g.size() == nt_, "ModalField: theta grid mismatch");
    auto it = m_.find(l);
    if (it == m_.end())
        m_.emplace(l, g);
    else
        it->second += g;
}

ModalField& ModalField::operator+=(const ModalField& o)
{
    if (nt_ == 0)
        nt_ = o.nt_;
    for (const auto& [l, g] : o.m_)
        accumulate(l, g);
    return *this;
}

ModalField& ModalField::operator*=(cplx s)
{
    for (auto& [l, g] : m_)
        g *= s;
    return *this;
}

ModalField operator+(ModalField a, const ModalField& b) { return a += b; }
ModalField operator*(cplx s, ModalField a) { return a *= s; }

ModalField ModalField::dtheta() const
{
    ModalField out(nt_);
    for (const auto& [l, g] : m_)
        out.m_.emplace(l, g.derivative());
    return out;
}

ModalField ModalField::B(const ModelParams& p) const
{
    ModalField out(nt_);
    for (const auto& [l, g] : m_) {
        if (norm2(l) == 0)
            continue;
        out.m_.emplace(l, multiplier_B(l, p, nt_) * g.integral());
    }
    return out;
}

ModalField ModalField::product(const ModalField& o) const
{
    require(o.nt_ == nt_, "ModalField: theta grid mismatch");
    ModalField out(nt_);
    for (const auto& [l, g] : m_)
        for (const auto& [m, h] : o.m_)
            out.accumulate(l + m, g * h);
    return out;
}

double ModalField::max_abs() const
{
    double m = 0.0;
    for (const auto& [l, g] : m_)
        m = std::max(m, g.max_abs());
    return m;
}

Field ModalField::to_field(const GridDims& dims) const
{
    std::map<IVec2, ThetaFun> r;
    for (const auto& [l, g] : m_)
        r.emplace(l, g.size() == dims.nt ? g : g.resampled(dims.nt));
    return inverse_partial_fourier(r, dims);
}

ModalField ModalField::from_field(const Field& f, double drop_below)
{
    const GridDims& d = f.dims();
    std::vector<cplx> buf(f.data().begin(), f.data().end());
    FftX fx(d.n1, d.n2, d.nt);
    fx.forward(buf.data());
    const double norm = 1.0 / (static_cast<double>(d.n1) * d.n2);
    ModalField out(d.nt);
    for (int a = 0; a < d.n1; ++a)
        for (int b = 0; b < d.n2; ++b) {
            std::vector<cplx> vals(d.nt);
            double m = 0.0;
            for (int j = 0; j < d.nt; ++j) {
                vals[j] = buf[(static_cast<size_t>(a) * d.n2 + b) * d.nt + j] * norm;
                m = std::max(m, std::abs(vals[j]));
            }
            if (m <= drop_below)
                continue;
            const IVec2 l{a <= d.n1 / 2 ? a : a - d.n1, b <= d.n2 / 2 ? b : b - d.n2};
            out.m_.emplace(l, ThetaFun::from_values(std::move(vals)));
        }
    return out;
}

cplx inner(const ModalField& f, const ModalField& g)
{
    cplx s = 0.0;
    for (const auto& [l, h] : g.modes()) {
        if (!f.has(l))
            continue;
        s += integrate_product(f.at(l).conj(), h);
    }
    return s;
}

ThetaFun partial_fourier(const Field& f, const IVec2& kvec)
{
    const GridDims& d = f.dims();
    require(2 * std::abs(kvec[0]) <= d.n1 && 2 * std::abs(kvec[1]) <= d.n2,
            "partial_fourier: wave vector outside the grid lattice");
    std::vector<cplx> vals(d.nt, 0.0);
    for (int a = 0; a < d.n1; ++a)
        for (int b = 0; b < d.n2; ++b) {
            const cplx ph = std::polar(1.0, -two_pi * (static_cast<double>(kvec[0]) * a / d.n1 +
                                                       static_cast<double>(kvec[1]) * b / d.n2));
            for (int j = 0; j < d.nt; ++j)
                vals[j] += f(a, b, j) * ph;
        }
    const double norm = 1.0 / (static_cast<double>(d.n1) * d.n2);
    for (auto& x : vals)
        x *= norm;
    return ThetaFun::from_values(std::move(vals));
}

Field inverse_partial_fourier(const std::map<IVec2, ThetaFun>& modes, const GridDims& dims)
{
    std::vector<cplx> buf(dims.size(), 0.0);
    for (const auto& [l, g] : modes) {
        require(2 * std::abs(l[0]) < dims.n1 && 2 * std::abs(l[1]) < dims.n2,
                "inverse_partial_fourier: mode outside the grid lattice");
        require(g.size() == dims.nt, "inverse_partial_fourier: theta grid mismatch");
        const size_t base = (static_cast<size_t>(wrap(l[0], dims.n1)) * dims.n2 + wrap(l[1], dims.n2)) * dims.nt;
        for (int j = 0; j < dims.nt; ++j)
            buf[base + j] += g[j];
    }
    FftX fx(dims.n1, dims.n2, dims.nt);
    fx.backward(buf.data());
    Field out(dims);
    for (size_t i = 0; i < buf.size(); ++i)
        out.data()[i] = buf[i].real();
    return out;
}

Field antipodal_reflect(const Field& f)
{
    const GridDims& d = f.dims();
    require(d.nt % 2 == 0, "antipodal_reflect: theta grid must be even");
    Field out(d);
    for (int a = 0; a < d.n1; ++a)
        for (int b = 0; b < d.n2; ++b)
            for (int j = 0; j < d.nt; ++j)
                out(a, b, j) = f(wrap(-a, d.n1), wrap(-b, d.n2), (j + d.nt / 2) % d.nt);
    return out;
}

Field swap(const Field& f)
{
    const GridDims& d = f.dims();
    require(d.n1 == d.n2, "swap: grid must be square");
    require(d.nt % 4 == 0, "swap: theta grid size must be divisible by 4");
    Field out(d);
    for (int a = 0; a < d.n1; ++a)
        for (int b = 0; b < d.n2; ++b)
            for (int j = 0; j < d.nt; ++j)
                out(a, b, j) = f(wrap(-b, d.n1), wrap(-a, d.n2), wrap(-j - d.nt / 4, d.nt));
    return out;
}

KernelBasis kernel_basis(int k, double sigma_theta, const ModelParams& p, int nt)
{
    require(k >= 1, "kernel_basis: wave number must be >= 1");
    p.validate();
    KernelBasis kb;
    kb.k = k;
    kb.sigma_theta = sigma_theta;

    const IVec2 k1{k, 0}, k2{0, k};
    const cplx I(0.0, 1.0);
    auto place = [&](ModalField& out, ModalField& bis, const IVec2& kv, const ThetaFun& plus,
                     const ThetaFun& minus) {
        out = ModalField(nt);
        out.set(kv, plus);
        out.set(-kv, minus);
        bis = ModalField(nt);
        bis.set(kv, I * plus);
        bis.set(-kv, -I * minus);
    };

    ResolventInfo info;
    auto U = [&](const IVec2& kv) {
        ThetaFun u = compute_U(kv, sigma_theta, p, nt, &info);
        kb.max_tail = std::max(kb.max_tail, info.tail);
        return u;
    };
    auto V = [&](const IVec2& kv) {
        ThetaFun v = compute_V(kv, sigma_theta, p, nt, &info);
        kb.max_tail = std::max(kb.max_tail, info.tail);
        return v;
    };

    const ThetaFun u1 = U(k1);
    place(kb.phi1, kb.phi1_bis, k1, u1, U(-k1));
    place(kb.phi2, kb.phi2_bis, k2, U(k2), U(-k2));
    place(kb.psi1, kb.psi1_bis, k1, V(k1), V(-k1));
    place(kb.psi2, kb.psi2_bis, k2, V(k2), V(-k2));

    const double integral = u1.integral().real();
    if (!(integral > 0.0))
        throw NumericalError("kernel_basis: int U dtheta is not positive; sigma_theta is too large");
    kb.chi_k = two_pi / integral;

    kb.pairing = inner(kb.psi1, kb.phi1).real();
    if (!(kb.pairing > 1e-14))
        throw NumericalError("kernel_basis: pairing <psi, phi> is not positive; sigma_theta is too large");
    kb.n_k = 1.0 / kb.pairing;
    return kb;
}

std::array<double, 2> kernel_coordinates(const Field& f, const KernelBasis& basis)
{
    const Field psi1 = basis.psi1.to_field(f.dims());
    const Field psi2 = basis.psi2.to_field(f.dims());
    return {basis.n_k * inner(f, psi1), basis.n_k * inner(f, psi2)};
}

Field project_Q(const Field& f, const KernelBasis& basis)
{
    const auto r = kernel_coordinates(f, basis);
    return r[0] * basis.phi1.to_field(f.dims()) + r[1] * basis.phi2.to_field(f.dims());
}

ModalField project_Q(const ModalField& f, const KernelBasis& basis)
{
    const double r1 = basis.n_k * inner(basis.psi1, f).real();
    const double r2 = basis.n_k * inner(basis.psi2, f).real();
    return cplx(r1) * basis.phi1 + cplx(r2) * basis.phi2;
}

}  // namespace antbif
