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

#ifndef twdp_errors_H
#define twdp_errors_H

#include <stdexcept>
#include <string>

namespace twdp
{
    // Invalid arguments or violated preconditions are reported as std::domain_error.
    // The types below cover the remaining failure classes of the pipeline.

    // Input files that cannot be read or parsed.
    class parse_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // The estimator cannot produce a result for otherwise valid input,
    // e.g. a sample with zero likelihood in every grid cell.
    class estimation_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // A numerical quantity left its valid range (zero expected count, non-finite result).
    class numerical_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };
}

#endif
