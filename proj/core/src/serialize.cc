// Copyright 2026 The ds3sim Authors
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

#include "ds3/serialize.h"

#include <stdexcept>

namespace ds3 {

Json complex_to_json(Complex z) {
    return Json::array({z.real(), z.imag()});
}

Complex complex_from_json(const Json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw std::invalid_argument("complex value must be [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const ComplexMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            row.push_back(complex_to_json(m(i, k)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const Json &j) {
    if (!j.is_array()) {
        throw std::invalid_argument("matrix must be an array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j[0].size());
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols) {
            throw std::invalid_argument("matrix rows have unequal length");
        }
        for (Eigen::Index k = 0; k < cols; ++k) {
            m(i, k) = complex_from_json(j[i][k]);
        }
    }
    return m;
}

Json real_matrix_to_json(const Eigen::MatrixXd &m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            row.push_back(m(i, k));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

Json factor_json(Complex coeff, const std::string &ribbon, GroupElement h, GroupElement g) {
    return {{"coeff", complex_to_json(coeff)}, {"ribbon", ribbon}, {"h", name_of(h)}, {"g", name_of(g)}};
}

Json vector_json(const RealVector &v) {
    return Json(std::vector<double>(v.data(), v.data() + v.size()));
}

}  // namespace

Json to_json(const RibbonSum &sum) {
    Json out = Json::array();
    for (const RibbonTerm &t : sum) {
        out.push_back(factor_json(t.coeff, t.ribbon, t.h, t.g));
    }
    return out;
}

Json to_json(const RibbonWord &word) {
    Json out = Json::array();
    for (const RibbonMonomial &m : word.monomials) {
        Json factors = Json::array();
        for (size_t i = 0; i < m.factors.size(); ++i) {
            const RibbonFactor &f = m.factors[i];
            factors.push_back(factor_json(i == 0 ? m.coeff : Complex(1.0, 0.0), f.ribbon, f.h, f.g));
        }
        out.push_back(std::move(factors));
    }
    return out;
}

Json to_json(const AnyonDecomposition &d) {
    return {{"A", complex_to_json(d.coeff_a)},
            {"B", complex_to_json(d.coeff_b)},
            {"G", complex_to_json(d.coeff_g)},
            {"residual_norm", d.residual_norm}};
}

Json to_json(const Dilation &d) {
    return {{"kind", name_of(d.kind)},
            {"alpha", d.alpha},
            {"aux_modes", d.aux_modes},
            {"target", matrix_to_json(d.target)},
            {"enclosing", matrix_to_json(d.enclosing)}};
}

Json to_json(const SuccessReport &r) {
    Json out = {{"alpha", r.alpha},
                {"p_min", r.p_min},
                {"p_max", r.p_max},
                {"p_avg", r.p_avg},
                {"extremal_states", matrix_to_json(r.extremal_states)},
                {"state_probabilities", vector_json(r.state_probabilities)}};
    out["claimed_average"] = r.claimed_average ? Json(*r.claimed_average) : Json(nullptr);
    out["deviation"] = r.deviation ? Json(*r.deviation) : Json(nullptr);
    return out;
}

Json to_json(const KrausProcess &k) {
    Json ops = Json::array();
    for (const ComplexMatrix &op : k.operators) {
        ops.push_back(matrix_to_json(op));
    }
    return {{"dim_in", k.dim_in()}, {"dim_out", k.dim_out()}, {"operators", std::move(ops)}};
}

Json to_json(const ChoiState &c) {
    return {{"dim_in", c.dim_in},
            {"dim_out", c.dim_out},
            {"normalized", c.normalized},
            {"matrix", matrix_to_json(c.matrix)}};
}

Json to_json(const TomographyData &data) {
    Json settings = Json::array();
    for (int mu = 0; mu < kMubCount; ++mu) {
        for (int i = 0; i < kMubDim; ++i) {
            for (int nu = 0; nu < kMubCount; ++nu) {
                for (int j = 0; j < kMubDim; ++j) {
                    settings.push_back({{"mu", mu}, {"i", i}, {"nu", nu}, {"j", j}, {"I", data.at(mu, i, nu, j)}});
                }
            }
        }
    }
    return {{"dims", {kMubCount, kMubDim, kMubCount, kMubDim}},
            {"shots_per_setting", data.shots_per_setting ? Json(*data.shots_per_setting) : Json(nullptr)},
            {"seed", data.seed},
            {"settings", std::move(settings)}};
}

Json to_json(const ProcessEstimate &e) {
    return {{"choi", to_json(e.choi)},
            {"scale", e.scale},
            {"objective", e.objective},
            {"iterations", e.iterations},
            {"converged", e.converged},
            {"objective_trace", e.objective_trace}};
}

Json to_json(const FidelitySummary &s) {
    return {{"mean", s.mean}, {"std", s.std}, {"min", s.min}, {"max", s.max}, {"fidelities", s.fidelities}};
}

Json to_json(const BenchmarkRow &row) {
    return {{"target", row.target},
            {"kind", name_of(row.kind)},
            {"p", row.p},
            {"purity", row.purity},
            {"fidelity", row.fidelity},
            {"certified_purity", row.certified_purity},
            {"certified_fidelity", row.certified_fidelity}};
}

Json to_json(const PhotonicCircuit &c) {
    return {{"n_modes", c.n_modes},
            {"stages",
             Json::array({{{"phase_plane", vector_json(c.phases[0])}},
                          {{"mixer", matrix_to_json(c.mixers[0])}},
                          {{"phase_plane", vector_json(c.phases[1])}},
                          {{"mixer", matrix_to_json(c.mixers[1])}}})},
            {"signal_ports_in", c.ports_in},
            {"signal_ports_out", c.ports_out}};
}

Json to_json(const WfmReport &r) {
    return {{"iterations_run", r.iterations_run},
            {"objective_trace", r.objective_trace},
            {"final_fidelity", r.final_fidelity},
            {"realized_block", matrix_to_json(r.realized_block)}};
}

}  // namespace ds3
