// Copyright 2026 The docret Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "docret/core/embedding.hpp"

namespace docret::scoring {

/// Cosine similarity in [-1, 1]. Throws kDimMismatch / kZeroVector.
double cosine(const DenseEmbedding& q, const DenseEmbedding& d);

/// Late-interaction score: for each query token the best cosine over all
/// document tokens, summed. Range [-n_q, n_q].
double maxsim(const MultiVectorEmbedding& q, const MultiVectorEmbedding& d);

/// maxsim divided by the number of query tokens. Range [-1, 1].
double maxsim_normalized(const MultiVectorEmbedding& q,
                         const MultiVectorEmbedding& d);

}  // namespace docret::scoring
