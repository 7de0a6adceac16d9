// Copyright 2026 The Tempo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Principal branch of the Lambert W function.

#pragma once

namespace tempo {

/// W0(x) for x >= -1/e: the w >= -1 solving w * exp(w) = x. Computed by a
/// branch-aware initial guess refined with Halley steps. Throws
/// std::domain_error below the branch point.
double lambert_w0(double x);

}  // namespace tempo
