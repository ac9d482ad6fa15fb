#pragma once

#include <memory>
#include <vector>

#include "antbif/params.hpp"

namespace antbif {

// Thin wrappers over FFTW. All transforms are unnormalised and in place;
// sign = -1 is the forward transform.

void fft1(cplx* data, int n, int sign);
inline void fft1(std::vector<cplx>& data, int sign) { fft1(data.data(), static_cast<int>(data.size()), sign); }

// 3-D transform on a row-major n1 x n2 x n3 array.
class Fft3 {
public:
    Fft3(int n1, int n2, int n3);
    ~Fft3();
    Fft3(const Fft3&) = delete;
    Fft3& operator=(const Fft3&) = delete;

    void forward(cplx* data) const;
    void backward(cplx* data) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// 2-D transforms over the leading two axes of an n1 x n2 x n3 array, one per
// index of the trailing axis.
class FftX {
public:
    FftX(int n1, int n2, int n3);
    ~FftX();
    FftX(const FftX&) = delete;
    FftX& operator=(const FftX&) = delete;

    void forward(cplx* data) const;
    void backward(cplx* data) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace antbif
