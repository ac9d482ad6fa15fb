#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "antbif/params.hpp"
#include "antbif/theta.hpp"

namespace antbif {

struct GridDims {
    int n1 = 32;
    int n2 = 32;
    int nt = 64;

    size_t size() const { return static_cast<size_t>(n1) * n2 * nt; }
    bool operator==(const GridDims&) const = default;
};

// Real function on [0,1)^2 x [0,2pi), row-major (x1, x2, theta).
class Field {
public:
    Field() = default;
    explicit Field(const GridDims& dims, double fill = 0.0);

    template <class F>
    static Field sample(const GridDims& dims, F&& f)
    {
        Field out(dims);
        for (int a = 0; a < dims.n1; ++a)
            for (int b = 0; b < dims.n2; ++b)
                for (int j = 0; j < dims.nt; ++j)
                    out(a, b, j) = f(static_cast<double>(a) / dims.n1, static_cast<double>(b) / dims.n2,
                                     ThetaFun::theta(j, dims.nt));
        return out;
    }

    const GridDims& dims() const { return dims_; }
    double& operator()(int a, int b, int j) { return v_[(static_cast<size_t>(a) * dims_.n2 + b) * dims_.nt + j]; }
    double operator()(int a, int b, int j) const { return v_[(static_cast<size_t>(a) * dims_.n2 + b) * dims_.nt + j]; }
    std::vector<double>& data() { return v_; }
    const std::vector<double>& data() const { return v_; }

    double mass() const;  // int f dx dtheta
    double max_abs() const;
    double min() const;
    double l2() const;

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(double s);

    void write_binary(std::ostream& os) const;
    static Field read_binary(std::istream& is);
    // theta-averaged density over x, one line per grid point
    void write_density_csv(std::ostream& os) const;

private:
    GridDims dims_{};
    std::vector<double> v_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);

// Grid quadrature of int f g dx dtheta.
double inner(const Field& f, const Field& g);

// Sparse partial Fourier representation: x-mode -> theta profile.
// Real fields carry conjugate profiles at -l and l.
class ModalField {
public:
    ModalField() = default;
    explicit ModalField(int nt) : nt_(nt) {}

    int nt() const { return nt_; }
    const std::map<IVec2, ThetaFun>& modes() const { return m_; }
    bool has(const IVec2& l) const { return m_.count(l) > 0; }
    const ThetaFun& at(const IVec2& l) const;
    ThetaFun get(const IVec2& l) const;  // zero profile if absent
    void set(const IVec2& l, ThetaFun g);
    void accumulate(const IVec2& l, const ThetaFun& g);

    ModalField& operator+=(const ModalField& o);
    ModalField& operator*=(cplx s);

    ModalField dtheta() const;
    // B_tau[f]: mode l becomes B_l(theta) * int f_l dtheta.
    ModalField B(const ModelParams& p) const;
    // Convolution over x-modes, pointwise product in theta.
    ModalField product(const ModalField& o) const;

    double max_abs() const;
    Field to_field(const GridDims& dims) const;
    static ModalField from_field(const Field& f, double drop_below = 0.0);

private:
    int nt_ = 0;
    std::map<IVec2, ThetaFun> m_;
};

ModalField operator+(ModalField a, const ModalField& b);
ModalField operator*(cplx s, ModalField a);

// sum_l int conj(f_l) g_l dtheta on the unit torus.
cplx inner(const ModalField& f, const ModalField& g);

// Partial Fourier transform of a grid field at kvec: int f e^{-2 pi i k.x} dx.
ThetaFun partial_fourier(const Field& f, const IVec2& kvec);
Field inverse_partial_fourier(const std::map<IVec2, ThetaFun>& modes, const GridDims& dims);

Field antipodal_reflect(const Field& f);  // f(-x, theta + pi)
Field swap(const Field& f);               // f(-x2, -x1, -theta - pi/2)

struct KernelBasis {
    int k = 1;
    double sigma_theta = 0.0;
    double chi_k = 0.0;
    ModalField phi1, phi2, psi1, psi2;
    ModalField phi1_bis, phi2_bis, psi1_bis, psi2_bis;
    double pairing = 0.0;  // <psi1, phi1>
    double n_k = 0.0;      // 1 / pairing
    double max_tail = 0.0;
};

KernelBasis kernel_basis(int k, double sigma_theta, const ModelParams& p, int nt);

Field project_Q(const Field& f, const KernelBasis& basis);
ModalField project_Q(const ModalField& f, const KernelBasis& basis);

// Coordinates (r1, r2) of the projection onto phi1, phi2.
std::array<double, 2> kernel_coordinates(const Field& f, const KernelBasis& basis);

}  // namespace antbif
