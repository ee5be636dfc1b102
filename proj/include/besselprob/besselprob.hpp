/*
 *   Copyright 2026 The besselprob Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Everything in one include.

#include "errors.hpp"
#include "existence.hpp"
#include "gamma_ratio_spec.hpp"
#include "gammatype.hpp"
#include "hyp1f2.hpp"
#include "parallel.hpp"
#include "precision.hpp"
#include "quad.hpp"
#include "random.hpp"
#include "specfun.hpp"
#include "vandantzig.hpp"

namespace besselprob {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace besselprob
