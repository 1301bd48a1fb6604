// Copyright 2026 The mlplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MLPLAB_LAB_PGM_HPP_
#define MLPLAB_LAB_PGM_HPP_

#include <string>

#include "mlplab/saliency.hpp"

namespace mlplab::lab {

/// ASCII PGM (P2, maxval 255) of the max-normalized map.
std::string saliency_to_pgm(const SaliencyMap& map);
/// 28 lines of 28 comma-separated raw values.
std::string saliency_to_csv(const SaliencyMap& map);

/// ASCII PGM of a 784-pixel image with intensities in [0, 1].
std::string image_to_pgm(const Eigen::Ref<const Eigen::RowVectorXd>& image);

}  // namespace mlplab::lab

#endif  // MLPLAB_LAB_PGM_HPP_
