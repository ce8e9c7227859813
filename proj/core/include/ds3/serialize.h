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

#ifndef DS3_SERIALIZE_H
#define DS3_SERIALIZE_H

#include <nlohmann/json.hpp>

#include "ds3/channel.h"
#include "ds3/dilation.h"
#include "ds3/noise.h"
#include "ds3/ribbon.h"
#include "ds3/tomography.h"
#include "ds3/wfm.h"

namespace ds3 {

using Json = nlohmann::json;

/// Complex numbers are [re, im]; matrices are row-major nested arrays of those pairs.
Json complex_to_json(Complex z);
Complex complex_from_json(const Json &j);
Json matrix_to_json(const ComplexMatrix &m);
/// Throws std::invalid_argument for ragged or malformed input.
ComplexMatrix matrix_from_json(const Json &j);
Json real_matrix_to_json(const Eigen::MatrixXd &m);

Json to_json(const RibbonSum &sum);
Json to_json(const RibbonWord &word);
Json to_json(const AnyonDecomposition &d);
Json to_json(const Dilation &d);
Json to_json(const SuccessReport &r);
Json to_json(const KrausProcess &k);
Json to_json(const ChoiState &c);
Json to_json(const TomographyData &data);
Json to_json(const ProcessEstimate &e);
Json to_json(const FidelitySummary &s);
Json to_json(const BenchmarkRow &row);
Json to_json(const PhotonicCircuit &c);
Json to_json(const WfmReport &r);

}  // namespace ds3

#endif
