// Copyright 2026 The mermin Authors
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


/// @file
/// Everything in one include.

#pragma once

#include "mermin/bits.hpp"
#include "mermin/circuit.hpp"
#include "mermin/circuit_io.hpp"
#include "mermin/config.hpp"
#include "mermin/degradation.hpp"
#include "mermin/density_matrix.hpp"
#include "mermin/equivalence.hpp"
#include "mermin/error.hpp"
#include "mermin/experiment.hpp"
#include "mermin/kernels.hpp"
#include "mermin/mermin.hpp"
#include "mermin/noise.hpp"
#include "mermin/sampling.hpp"
#include "mermin/statevector.hpp"
#include "mermin/transpiler.hpp"
