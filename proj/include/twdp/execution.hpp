// SPDX-License-Identifier: Apache-2.0
//
// twdpfit: fading-model identification for directional channel measurements
// Copyright (C) 2026 The twdpfit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef twdp_execution_H
#define twdp_execution_H

namespace twdp
{
    // Selects between the OpenMP kernels and the single-threaded reference path.
    // Both produce bit-identical results.
    enum class Execution
    {
        serial,
        parallel
    };
}

#endif
