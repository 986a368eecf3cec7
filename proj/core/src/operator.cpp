// Copyright 2026 The dualrail Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dualrail/operator.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "dualrail/error.hpp"

namespace dualrail {

double max_abs_deviation_from_identity(const Eigen::MatrixXcd &m) {
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    return (m - id).cwiseAbs().maxCoeff();
}

double unitarity_error(const Eigen::MatrixXcd &u) {
    if (u.rows() != u.cols() || u.size() == 0) {
        return std::numeric_limits<double>::infinity();
    }
    return max_abs_deviation_from_identity(u.adjoint() * u);
}

double hermiticity_error(const Eigen::MatrixXcd &h) {
    if (h.rows() != h.cols() || h.size() == 0) {
        return std::numeric_limits<double>::infinity();
    }
    return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

bool is_unitary(const Eigen::MatrixXcd &u, double tol) { return unitarity_error(u) <= tol; }
bool is_hermitian(const Eigen::MatrixXcd &h, double tol) { return hermiticity_error(h) <= tol; }

namespace fock {

Eigen::MatrixXcd annihilation(std::size_t dim) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t n = 1; n < dim; ++n) {
        a(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n)) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

Eigen::MatrixXcd creation(std::size_t dim) { return annihilation(dim).adjoint(); }

Eigen::MatrixXcd number(std::size_t dim) {
    Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t k = 0; k < dim; ++k) {
        n(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = static_cast<double>(k);
    }
    return n;
}

Eigen::MatrixXcd sigma_plus() {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}

Eigen::MatrixXcd sigma_minus() { return sigma_plus().adjoint(); }

Eigen::MatrixXcd sigma_x() { return sigma_plus() + sigma_minus(); }

Eigen::MatrixXcd sigma_y() { return Complex(0.0, -1.0) * (sigma_plus() - sigma_minus()); }

Eigen::MatrixXcd sigma_z() {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = -1.0;
    m(1, 1) = 1.0;
    return m;
}

Eigen::MatrixXcd tensor(const std::vector<Eigen::MatrixXcd> &factors) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(1, 1);
    // Later factors vary slower, so they sit on the left of the Kronecker product.
    for (const auto &f : factors) {
        Eigen::MatrixXcd next(f.rows() * acc.rows(), f.cols() * acc.cols());
        for (Eigen::Index i = 0; i < f.rows(); ++i) {
            for (Eigen::Index j = 0; j < f.cols(); ++j) {
                next.block(i * acc.rows(), j * acc.cols(), acc.rows(), acc.cols()) = f(i, j) * acc;
            }
        }
        acc = std::move(next);
    }
    return acc;
}

Eigen::MatrixXcd tensor(std::initializer_list<Eigen::MatrixXcd> factors) {
    return tensor(std::vector<Eigen::MatrixXcd>(factors));
}

} // namespace fock

namespace {

// Higham, "The scaling and squaring method for the matrix exponential
// revisited" (2005): degree thresholds and Padé coefficients.
constexpr std::array<double, 5> kTheta = {1.495585217958292e-2, 2.539398330063230e-1, 9.504178996162932e-1,
                                          2.097847961257068e0, 5.371920351148152e0};

void pade_low(const Eigen::MatrixXcd &a, int degree, Eigen::MatrixXcd &u, Eigen::MatrixXcd &v) {
    static constexpr double b3[] = {120.0, 60.0, 12.0, 1.0};
    static constexpr double b5[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
    static constexpr double b7[] = {17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0};
    static constexpr double b9[] = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
                                    2162160.0,     110880.0,     3960.0,       90.0,        1.0};
    const double *b = degree == 3 ? b3 : degree == 5 ? b5 : degree == 7 ? b7 : b9;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
    const Eigen::MatrixXcd a2 = a * a;
    Eigen::MatrixXcd power = id;
    Eigen::MatrixXcd odd = b[1] * id;
    Eigen::MatrixXcd even = b[0] * id;
    for (int k = 1; 2 * k <= degree; ++k) {
        power = power * a2;
        odd += b[2 * k + 1] * power;
        even += b[2 * k] * power;
    }
    u = a * odd;
    v = even;
}

void pade13(const Eigen::MatrixXcd &a, Eigen::MatrixXcd &u, Eigen::MatrixXcd &v) {
    static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                   1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                   670442572800.0,      33522128640.0,       1323241920.0,
                                   40840800.0,          960960.0,            16380.0,
                                   182.0,               1.0};
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
    const Eigen::MatrixXcd a2 = a * a;
    const Eigen::MatrixXcd a4 = a2 * a2;
    const Eigen::MatrixXcd a6 = a4 * a2;
    const Eigen::MatrixXcd inner_u = b[13] * a6 + b[11] * a4 + b[9] * a2;
    u = a * (a6 * inner_u + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    const Eigen::MatrixXcd inner_v = b[12] * a6 + b[10] * a4 + b[8] * a2;
    v = a6 * inner_v + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

} // namespace

Eigen::MatrixXcd expm(const Eigen::MatrixXcd &a) {
    if (a.rows() != a.cols()) {
        fail(ErrorCode::kInvalidArgument, "expm requires a square matrix");
    }
    if (a.size() == 0) {
        return a;
    }
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    Eigen::MatrixXcd u;
    Eigen::MatrixXcd v;
    constexpr std::array<int, 4> kLowDegrees = {3, 5, 7, 9};
    for (std::size_t k = 0; k < kLowDegrees.size(); ++k) {
        if (norm1 <= kTheta[k]) {
            pade_low(a, kLowDegrees[k], u, v);
            return (v - u).partialPivLu().solve(v + u);
        }
    }
    int squarings = 0;
    if (norm1 > kTheta[4]) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta[4])));
    }
    const Eigen::MatrixXcd scaled = a / std::ldexp(1.0, squarings);
    pade13(scaled, u, v);
    Eigen::MatrixXcd result = (v - u).partialPivLu().solve(v + u);
    for (int k = 0; k < squarings; ++k) {
        result = result * result;
    }
    return result;
}

OperatorMatrix exp_hermitian(const OperatorMatrix &gen, double scale) {
    const double herr = hermiticity_error(gen.entries);
    if (!(herr <= kHermitianTol)) {
        fail(ErrorCode::kNotHermitian, "generator is not Hermitian (deviation " + std::to_string(herr) + ")");
    }
    return {gen.subsystem_ids, expm(Complex(0.0, scale) * gen.entries)};
}

} // namespace dualrail
