#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace nlocal {

using cplx = std::complex<double>;

/// Fixed-size complex matrix, row-major storage. Only dims 2 and 4 are used.
template <int N>
struct ComplexMatrix {
    static constexpr int dim = N;
    std::array<cplx, static_cast<std::size_t>(N) * N> e{};

    cplx& operator()(int r, int c) { return e[static_cast<std::size_t>(r) * N + c]; }
    const cplx& operator()(int r, int c) const { return e[static_cast<std::size_t>(r) * N + c]; }

    static ComplexMatrix identity() {
        ComplexMatrix m;
        for (int i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix m;
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < N; ++c) m(r, c) = std::conj((*this)(c, r));
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    ComplexMatrix operator+(const ComplexMatrix& o) const {
        ComplexMatrix m;
        for (std::size_t i = 0; i < e.size(); ++i) m.e[i] = e[i] + o.e[i];
        return m;
    }
    ComplexMatrix operator-(const ComplexMatrix& o) const {
        ComplexMatrix m;
        for (std::size_t i = 0; i < e.size(); ++i) m.e[i] = e[i] - o.e[i];
        return m;
    }
    ComplexMatrix operator*(const ComplexMatrix& o) const {
        ComplexMatrix m;
        for (int r = 0; r < N; ++r)
            for (int k = 0; k < N; ++k) {
                const cplx ark = (*this)(r, k);
                if (ark == cplx{}) continue;
                for (int c = 0; c < N; ++c) m(r, c) += ark * o(k, c);
            }
        return m;
    }

    bool is_hermitian(double tol) const {
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < N; ++c)
                if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
        return true;
    }

    double max_abs_diff(const ComplexMatrix& o) const {
        double d = 0.0;
        for (std::size_t i = 0; i < e.size(); ++i) d = std::max(d, std::abs(e[i] - o.e[i]));
        return d;
    }
};

template <int N>
inline ComplexMatrix<N> operator*(cplx s, const ComplexMatrix<N>& m) {
    ComplexMatrix<N> r;
    for (std::size_t i = 0; i < m.e.size(); ++i) r.e[i] = s * m.e[i];
    return r;
}
template <int N>
inline ComplexMatrix<N> operator*(double s, const ComplexMatrix<N>& m) {
    return cplx(s, 0.0) * m;
}

using Mat2 = ComplexMatrix<2>;
using Mat4 = ComplexMatrix<4>;

Mat2 sigma_x();
Mat2 sigma_y();
Mat2 sigma_z();

/// 3x3 real matrix, row-major.
struct RealMatrix3 {
    std::array<double, 9> e{};

    double& operator()(int r, int c) { return e[static_cast<std::size_t>(r) * 3 + c]; }
    const double& operator()(int r, int c) const { return e[static_cast<std::size_t>(r) * 3 + c]; }

    static RealMatrix3 identity();
    static RealMatrix3 diag(double a, double b, double c);

    RealMatrix3 transposed() const;
    RealMatrix3 operator*(const RealMatrix3& o) const;
    std::array<double, 3> operator*(const std::array<double, 3>& v) const;
    double det() const;
    double max_abs_diff(const RealMatrix3& o) const;
};

/// Proper rotation (SO(3)); orthogonality and det +1 checked on construction.
class Rotation3 {
  public:
    static Rotation3 from_matrix(const RealMatrix3& m, double tol = 1e-12);
    static Rotation3 identity() { return Rotation3(RealMatrix3::identity()); }

    const RealMatrix3& matrix() const { return m_; }
    Rotation3 transposed() const { return Rotation3(m_.transposed()); }
    std::array<double, 3> apply(const std::array<double, 3>& v) const { return m_ * v; }

  private:
    explicit Rotation3(const RealMatrix3& m) : m_(m) {}
    RealMatrix3 m_;
};

/// Ordered correlation singular values: tau0 >= tau1 >= |tau2|, with
/// sign(tau0*tau1*tau2) = sign(det T) carried by tau2.
struct SingularTriple {
    double tau0 = 0.0;
    double tau1 = 0.0;
    double tau2 = 0.0;
};

struct SignedSvd3 {
    Rotation3 ra = Rotation3::identity();
    SingularTriple tau;
    Rotation3 rb = Rotation3::identity();
};

/// Two-sided Jacobi SVD with the sign/ordering convention used throughout:
/// ra * m * rb^T = diag(tau1, tau2, tau0), ra and rb proper rotations.
SignedSvd3 signed_svd3(const RealMatrix3& m);

/// Lift of a proper rotation to SU(2): U with U (a.sigma) U^dag = (Ra).sigma.
/// Global phase fixed so the first nonzero entry in reading order is real >= 0.
Mat2 so3_to_su2(const Rotation3& r);

Mat4 kron(const Mat2& a, const Mat2& b);

/// Re tr(obs * rho) for a Hermitian observable; throws if obs is not
/// Hermitian within 1e-10 or the imaginary residual exceeds 1e-10.
double expectation(const Mat4& obs, const Mat4& rho);

struct HermitianEig4 {
    std::array<double, 4> values{};  // ascending
    Mat4 vectors;                    // columns are eigenvectors
};

/// Cyclic complex Jacobi diagonalization of a 4x4 Hermitian matrix.
HermitianEig4 hermitian_eig(const Mat4& h);

/// Heap-backed square complex matrix for the 4^n-dimensional direct route.
struct DynMatrix {
    int dim = 0;
    std::vector<cplx> e;

    DynMatrix() = default;
    explicit DynMatrix(int d) : dim(d), e(static_cast<std::size_t>(d) * d) {}

    cplx& operator()(int r, int c) { return e[static_cast<std::size_t>(r) * dim + c]; }
    const cplx& operator()(int r, int c) const { return e[static_cast<std::size_t>(r) * dim + c]; }
};

DynMatrix to_dyn(const Mat4& m);
DynMatrix kron(const DynMatrix& a, const DynMatrix& b);
cplx trace_product(const DynMatrix& a, const DynMatrix& b);

}  // namespace nlocal
