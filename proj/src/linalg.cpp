#include "nlocal/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlocal {

Mat2 sigma_x() {
    Mat2 m;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

Mat2 sigma_y() {
    Mat2 m;
    m(0, 1) = cplx(0.0, -1.0);
    m(1, 0) = cplx(0.0, 1.0);
    return m;
}

Mat2 sigma_z() {
    Mat2 m;
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

RealMatrix3 RealMatrix3::identity() {
    RealMatrix3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
}

RealMatrix3 RealMatrix3::diag(double a, double b, double c) {
    RealMatrix3 m;
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m;
}

RealMatrix3 RealMatrix3::transposed() const {
    RealMatrix3 m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = (*this)(c, r);
    return m;
}

RealMatrix3 RealMatrix3::operator*(const RealMatrix3& o) const {
    RealMatrix3 m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += (*this)(r, k) * o(k, c);
            m(r, c) = s;
        }
    return m;
}

std::array<double, 3> RealMatrix3::operator*(const std::array<double, 3>& v) const {
    std::array<double, 3> r{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) r[i] += (*this)(i, k) * v[k];
    return r;
}

double RealMatrix3::det() const {
    const RealMatrix3& m = *this;
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

double RealMatrix3::max_abs_diff(const RealMatrix3& o) const {
    double d = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) d = std::max(d, std::abs(e[i] - o.e[i]));
    return d;
}

Rotation3 Rotation3::from_matrix(const RealMatrix3& m, double tol) {
    const RealMatrix3 gram = m.transposed() * m;
    if (gram.max_abs_diff(RealMatrix3::identity()) > tol)
        throw std::invalid_argument("Rotation3: matrix is not orthogonal");
    if (std::abs(m.det() - 1.0) > tol)
        throw std::invalid_argument("Rotation3: determinant is not +1 (improper rotation)");
    return Rotation3(m);
}

namespace {

void apply_givens_left(RealMatrix3& m, int p, int q, double c, double s) {
    // rows p,q <- G^T * rows, G = [[c,-s],[s,c]] embedded at (p,q)
    for (int j = 0; j < 3; ++j) {
        const double mp = m(p, j), mq = m(q, j);
        m(p, j) = c * mp + s * mq;
        m(q, j) = -s * mp + c * mq;
    }
}

void apply_givens_right(RealMatrix3& m, int p, int q, double c, double s) {
    // columns p,q <- columns * G
    for (int i = 0; i < 3; ++i) {
        const double mp = m(i, p), mq = m(i, q);
        m(i, p) = c * mp + s * mq;
        m(i, q) = -s * mp + c * mq;
    }
}

double off_diag_max(const RealMatrix3& m) {
    double d = 0.0;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            if (r != c) d = std::max(d, std::abs(m(r, c)));
    return d;
}

int sign_or_one(double x) { return x < 0.0 ? -1 : 1; }

}  // namespace

SignedSvd3 signed_svd3(const RealMatrix3& m) {
    RealMatrix3 w = m;                       // maintained as u^T * m * v
    RealMatrix3 u = RealMatrix3::identity();
    RealMatrix3 v = RealMatrix3::identity();

    double scale = 0.0;
    for (double x : m.e) scale = std::max(scale, std::abs(x));
    const double tol = (scale > 0.0 ? scale : 1.0) * 1e-15;

    // Kogbetliantz sweeps: per (p,q) pair symmetrize the 2x2 block with a
    // left rotation, then annihilate it with a two-sided Jacobi rotation.
    for (int sweep = 0; sweep < 60 && off_diag_max(w) > tol; ++sweep) {
        for (int p = 0; p < 3; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (std::abs(w(p, q)) <= tol && std::abs(w(q, p)) <= tol) continue;
                const double theta1 = std::atan2(w(q, p) - w(p, q), w(p, p) + w(q, q));
                const double c1 = std::cos(theta1), s1 = std::sin(theta1);
                apply_givens_left(w, p, q, c1, s1);
                apply_givens_right(u, p, q, c1, s1);

                // block is symmetric now; standard Jacobi angle
                if (std::abs(w(p, q)) > tol) {
                    const double theta2 = 0.5 * std::atan2(2.0 * w(p, q), w(p, p) - w(q, q));
                    const double c2 = std::cos(theta2), s2 = std::sin(theta2);
                    apply_givens_left(w, p, q, c2, s2);
                    apply_givens_right(w, p, q, c2, s2);
                    apply_givens_right(u, p, q, c2, s2);
                    apply_givens_right(v, p, q, c2, s2);
                }
                w(p, q) = 0.0;
                w(q, p) = 0.0;
            }
        }
    }

    const std::array<double, 3> d = {w(0, 0), w(1, 1), w(2, 2)};

    // Magnitude order with a tie preference keeping the slot permutation at
    // identity for already-diagonal input: slots (z,x,y) take indices (2,0,1).
    std::array<int, 3> idx = {0, 1, 2};
    const std::array<int, 3> pref = {1, 2, 0};  // pref[index]: 2 first, then 0, then 1
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        const double ma = std::abs(d[a]), mb = std::abs(d[b]);
        if (ma != mb) return ma > mb;
        return pref[a] < pref[b];
    });
    const int i0 = idx[0], i1 = idx[1], i2 = idx[2];  // tau0, tau1, tau2 sources

    // Target slots: diag(tau1, tau2, tau0) means x<-i1, y<-i2, z<-i0.
    const std::array<int, 3> slot_src = {i1, i2, i0};

    RealMatrix3 ra_m, rb_m;
    std::array<double, 3> diag{};
    for (int slot = 0; slot < 3; ++slot) {
        const int src = slot_src[slot];
        const int f = sign_or_one(d[src]);  // flip onto the left factor
        for (int j = 0; j < 3; ++j) {
            ra_m(slot, j) = f * u(j, src);  // rows of u^T, permuted and sign-fixed
            rb_m(slot, j) = v(j, src);
        }
        diag[slot] = f * d[src];
    }

    // Restore properness; flipping the tau2 (y) row on both sides leaves the
    // diagonal intact, flipping it on one side moves the residual sign to tau2.
    const bool ra_improper = ra_m.det() < 0.0;
    const bool rb_improper = rb_m.det() < 0.0;
    if (ra_improper) {
        for (int j = 0; j < 3; ++j) ra_m(1, j) = -ra_m(1, j);
        diag[1] = -diag[1];
    }
    if (rb_improper) {
        for (int j = 0; j < 3; ++j) rb_m(1, j) = -rb_m(1, j);
        diag[1] = -diag[1];
    }

    SignedSvd3 out;
    out.ra = Rotation3::from_matrix(ra_m, 1e-12);
    out.rb = Rotation3::from_matrix(rb_m, 1e-12);
    out.tau = SingularTriple{diag[2], diag[0], diag[1]};
    return out;
}

Mat2 so3_to_su2(const Rotation3& rot) {
    const RealMatrix3& r = rot.matrix();

    // Shepperd quaternion extraction, branch on the largest diagonal pivot.
    double w, x, y, z;
    const double tr = r(0, 0) + r(1, 1) + r(2, 2);
    if (tr > 0.0) {
        const double s = 2.0 * std::sqrt(tr + 1.0);
        w = 0.25 * s;
        x = (r(2, 1) - r(1, 2)) / s;
        y = (r(0, 2) - r(2, 0)) / s;
        z = (r(1, 0) - r(0, 1)) / s;
    } else if (r(0, 0) >= r(1, 1) && r(0, 0) >= r(2, 2)) {
        const double s = 2.0 * std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2));
        w = (r(2, 1) - r(1, 2)) / s;
        x = 0.25 * s;
        y = (r(0, 1) + r(1, 0)) / s;
        z = (r(0, 2) + r(2, 0)) / s;
    } else if (r(1, 1) >= r(2, 2)) {
        const double s = 2.0 * std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2));
        w = (r(0, 2) - r(2, 0)) / s;
        x = (r(0, 1) + r(1, 0)) / s;
        y = 0.25 * s;
        z = (r(1, 2) + r(2, 1)) / s;
    } else {
        const double s = 2.0 * std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1));
        w = (r(1, 0) - r(0, 1)) / s;
        x = (r(0, 2) + r(2, 0)) / s;
        y = (r(1, 2) + r(2, 1)) / s;
        z = 0.25 * s;
    }

    // U = w*I - i*(x*sx + y*sy + z*sz)
    Mat2 u;
    u(0, 0) = cplx(w, -z);
    u(0, 1) = cplx(-y, -x);
    u(1, 0) = cplx(y, -x);
    u(1, 1) = cplx(w, z);

    // phase convention: first nonzero entry in reading order real and >= 0
    for (const cplx& entry : u.e) {
        const double mag = std::abs(entry);
        if (mag > 1e-12) {
            const cplx phase = std::conj(entry) / mag;
            for (cplx& v : u.e) v *= phase;
            break;
        }
    }
    return u;
}

Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return m;
}

double expectation(const Mat4& obs, const Mat4& rho) {
    if (!obs.is_hermitian(1e-10)) throw std::invalid_argument("expectation: observable is not Hermitian");
    cplx t = 0.0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) t += obs(r, c) * rho(c, r);
    if (std::abs(t.imag()) > 1e-10)
        throw std::runtime_error("expectation: imaginary residual above tolerance");
    return t.real();
}

HermitianEig4 hermitian_eig(const Mat4& h) {
    Mat4 a = h;
    Mat4 v = Mat4::identity();

    double scale = 0.0;
    for (const cplx& x : h.e) scale = std::max(scale, std::abs(x));
    const double tol = (scale > 0.0 ? scale : 1.0) * 1e-15;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= tol) break;

        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= tol) continue;
                const cplx phase = apq / mag;  // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = 0.5 * std::atan2(2.0 * mag, aqq - app);
                const double c = std::cos(theta);
                const cplx s = std::sin(theta) * phase;

                // G embeds [[c, s],[-conj(s), c]] at (p,q); a <- G^dag a G, v <- v G
                for (int r = 0; r < 4; ++r) {
                    const cplx arp = a(r, p), arq = a(r, q);
                    a(r, p) = c * arp - std::conj(s) * arq;
                    a(r, q) = s * arp + c * arq;
                }
                for (int col = 0; col < 4; ++col) {
                    const cplx apc = a(p, col), aqc = a(q, col);
                    a(p, col) = c * apc - s * aqc;
                    a(q, col) = std::conj(s) * apc + c * aqc;
                }
                for (int r = 0; r < 4; ++r) {
                    const cplx vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = c * vrp - std::conj(s) * vrq;
                    v(r, q) = s * vrp + c * vrq;
                }
            }
        }
    }

    std::array<int, 4> idx = {0, 1, 2, 3};
    std::sort(idx.begin(), idx.end(),
              [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    HermitianEig4 out;
    for (int k = 0; k < 4; ++k) {
        out.values[k] = a(idx[k], idx[k]).real();
        for (int r = 0; r < 4; ++r) out.vectors(r, k) = v(r, idx[k]);
    }
    return out;
}

DynMatrix to_dyn(const Mat4& m) {
    DynMatrix d(4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) d(r, c) = m(r, c);
    return d;
}

DynMatrix kron(const DynMatrix& a, const DynMatrix& b) {
    DynMatrix m(a.dim * b.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{}) continue;
            for (int k = 0; k < b.dim; ++k)
                for (int l = 0; l < b.dim; ++l)
                    m(b.dim * i + k, b.dim * j + l) = aij * b(k, l);
        }
    return m;
}

cplx trace_product(const DynMatrix& a, const DynMatrix& b) {
    if (a.dim != b.dim) throw std::invalid_argument("trace_product: dimension mismatch");
    cplx t = 0.0;
    for (int r = 0; r < a.dim; ++r)
        for (int c = 0; c < a.dim; ++c) t += a(r, c) * b(c, r);
    return t;
}

}  // namespace nlocal
