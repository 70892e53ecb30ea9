// Copyright 2026 The cqtsim Authors
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

#include <cmath>
#include <sstream>

#include "cqt/estimation.hpp"

namespace cqt {

namespace {

std::string trim(const std::string &s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    size_t e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

double parse_number(const std::string &field, const std::string &what) {
    try {
        size_t used = 0;
        double v = std::stod(field, &used);
        if (used != field.size() || !std::isfinite(v)) {
            throw std::invalid_argument(field);
        }
        return v;
    } catch (const std::exception &) {
        throw CsvError("bad " + what + " '" + field + "'");
    }
}

Mat2 projector(const Jones &j) { return j * j.adjoint(); }

std::vector<double> probabilities(const ProjectionCounts &c, const Matrix &rho) {
    std::vector<double> p;
    double total = 0.0;
    for (const auto &s : c.settings) {
        p.push_back(std::max((s.projector.adjoint() * rho * s.projector)(0, 0).real(), 0.0));
        total += p.back();
    }
    for (double &x : p) {
        x /= total;
    }
    return p;
}

double likelihood(const ProjectionCounts &c, const Matrix &rho) {
    auto p = probabilities(c, rho);
    double n = c.total();
    double l = 0.0;
    for (size_t i = 0; i < p.size(); i++) {
        if (c.settings[i].count > 0.0) {
            l += c.settings[i].count / n * std::log(p[i]);
        }
    }
    return l;
}

Matrix hermitian_power(const Matrix &m, double power) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    Eigen::VectorXd ev = es.eigenvalues().array().pow(power);
    return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Matrix unit_trace(const Matrix &m) {
    Matrix h = 0.5 * (m + m.adjoint());
    return h / h.trace().real();
}

}  // namespace

double ProjectionCounts::total() const {
    double t = 0.0;
    for (const auto &s : settings) {
        t += s.count;
    }
    return t;
}

int ProjectionCounts::informational_rank() const {
    if (settings.empty()) {
        return 0;
    }
    Eigen::MatrixXd a(static_cast<Eigen::Index>(settings.size()), 4);
    for (size_t i = 0; i < settings.size(); i++) {
        Mat2 p = projector(settings[i].projector);
        for (int k = 0; k < 4; k++) {
            a(static_cast<Eigen::Index>(i), k) = (qubit::pauli(k) * p).trace().real();
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    svd.setThreshold(1e-9);
    return static_cast<int>(svd.rank());
}

Jones parse_projector(const std::string &raw) {
    const std::string spec = trim(raw);
    const std::string prefix = "jones:";
    if (spec.rfind(prefix, 0) == 0) {
        std::vector<double> v;
        std::stringstream ss(spec.substr(prefix.size()));
        std::string part;
        while (std::getline(ss, part, ';')) {
            v.push_back(parse_number(trim(part), "Jones component"));
        }
        if (v.size() != 4) {
            throw CsvError("Jones projector needs four components: " + spec);
        }
        Jones j(cplx(v[0], v[1]), cplx(v[2], v[3]));
        if (j.norm() < 1e-12) {
            throw CsvError("zero Jones projector: " + spec);
        }
        return j / j.norm();
    }
    try {
        return qubit::from_label(spec);
    } catch (const std::invalid_argument &) {
        throw CsvError("unknown projector '" + spec + "'");
    }
}

ProjectionCounts parse_counts_csv(std::istream &in) {
    ProjectionCounts out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(t);
        std::string f;
        while (std::getline(ss, f, ',')) {
            fields.push_back(trim(f));
        }
        if (fields.size() != 3) {
            throw CsvError("line " + std::to_string(line_no) + ": expected 3 columns, got " +
                           std::to_string(fields.size()));
        }
        if (out.settings.empty() && fields[2] == "count") {
            continue;
        }
        double c = parse_number(fields[2], "count");
        if (c < 0.0) {
            throw CsvError("line " + std::to_string(line_no) + ": negative count");
        }
        out.settings.push_back({fields[0], parse_projector(fields[1]), c});
    }
    if (out.settings.empty()) {
        throw CsvError("no count rows");
    }
    return out;
}

ProjectionCounts synthesize_counts(const DensityOperator &rho, const std::vector<Jones> &projectors,
                                   double counts_per_setting, const std::vector<std::string> &labels) {
    if (rho.num_qubits() != 1) {
        throw DimensionError("single-qubit state expected");
    }
    ProjectionCounts out;
    for (size_t i = 0; i < projectors.size(); i++) {
        Jones j = projectors[i] / projectors[i].norm();
        double p = (j.adjoint() * rho.matrix() * j)(0, 0).real();
        std::string label = i < labels.size() ? labels[i] : "s" + std::to_string(i);
        out.settings.push_back({label, j, counts_per_setting * std::max(p, 0.0)});
    }
    return out;
}

ProjectionCounts axial_counts(const DensityOperator &rho, double counts_per_setting) {
    auto axes = qubit::axial_states();
    return synthesize_counts(rho, std::vector<Jones>(axes.begin(), axes.end()), counts_per_setting,
                             {"H", "V", "D", "A", "R", "L"});
}

double log_likelihood(const ProjectionCounts &counts, const DensityOperator &rho) {
    if (rho.num_qubits() != 1) {
        throw DimensionError("single-qubit state expected");
    }
    if (counts.total() <= 0.0) {
        throw std::domain_error("all counts are zero");
    }
    return likelihood(counts, rho.matrix());
}

MlResult ml_reconstruct(const ProjectionCounts &counts, const MlOptions &options) {
    if (counts.informational_rank() < 4) {
        throw std::invalid_argument("projector settings are not informationally complete");
    }
    const double n = counts.total();
    if (n <= 0.0) {
        throw std::domain_error("all counts are zero");
    }
    // Work with sigma = G^1/2 rho G^1/2, whose effective projectors sum to I.
    Matrix g = Matrix::Zero(2, 2);
    for (const auto &s : counts.settings) {
        g += projector(s.projector);
    }
    const Matrix g_half = hermitian_power(g, 0.5);
    const Matrix g_inv_half = hermitian_power(g, -0.5);
    std::vector<Matrix> effective;
    for (const auto &s : counts.settings) {
        effective.push_back(g_inv_half * projector(s.projector) * g_inv_half);
    }
    auto to_rho = [&](const Matrix &sigma) { return unit_trace(g_inv_half * sigma * g_inv_half); };

    Matrix sigma = unit_trace(g_half * (Matrix::Identity(2, 2) / 2.0) * g_half);
    MlResult out;
    double l = likelihood(counts, to_rho(sigma));
    out.likelihood_trace.push_back(l);

    for (int it = 1; it <= options.max_iterations; it++) {
        Matrix r = Matrix::Zero(2, 2);
        for (size_t i = 0; i < effective.size(); i++) {
            double c = counts.settings[i].count;
            if (c > 0.0) {
                double p = (effective[i] * sigma).trace().real();
                r += (c / n / p) * effective[i];
            }
        }
        Matrix next = unit_trace(r * sigma * r);
        double l_next = likelihood(counts, to_rho(next));
        // Diluted steps (I + eps R) if the plain step loses likelihood.
        for (double eps = 0.5; l_next < l && eps > 1e-12; eps *= 0.5) {
            Matrix d = Matrix::Identity(2, 2) + eps * r;
            next = unit_trace(d * sigma * d);
            l_next = likelihood(counts, to_rho(next));
        }
        if (l_next < l) {
            out.converged = true;  // no ascent direction left at double precision
            out.iterations = it;
            break;
        }
        const double change = std::abs(l_next - l) / std::max(std::abs(l), 1e-300);
        sigma = next;
        l = l_next;
        out.likelihood_trace.push_back(l);
        out.iterations = it;
        if (change < options.relative_tolerance) {
            out.converged = true;
            break;
        }
    }
    out.rho = DensityOperator(to_rho(sigma));
    return out;
}

}  // namespace cqt
