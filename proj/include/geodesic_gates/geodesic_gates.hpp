// Copyright 2026 The Geodesic Gates Authors
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

#ifndef GEODESIC_GATES_GEODESIC_GATES_HPP
#define GEODESIC_GATES_GEODESIC_GATES_HPP

#include "geodesic_gates/curve.hpp"
#include "geodesic_gates/dynamics.hpp"
#include "geodesic_gates/error_functionals.hpp"
#include "geodesic_gates/model.hpp"
#include "geodesic_gates/optimizer.hpp"
#include "geodesic_gates/parallel.hpp"
#include "geodesic_gates/quadrature.hpp"
#include "geodesic_gates/tensor.hpp"
#include "geodesic_gates/waveform.hpp"

#endif  // GEODESIC_GATES_GEODESIC_GATES_HPP
