// Copyright 2026 The trapsim Authors
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

/// \file
/// Umbrella header for the trapsim library.

#include "trapsim/bogacki_shampine.hpp"
#include "trapsim/bundled_scenarios.hpp"
#include "trapsim/errors.hpp"
#include "trapsim/exchange_model.hpp"
#include "trapsim/gate_design.hpp"
#include "trapsim/hamiltonian.hpp"
#include "trapsim/ion_crystal.hpp"
#include "trapsim/scenario.hpp"
#include "trapsim/spin_dynamics.hpp"
#include "trapsim/spin_state.hpp"
#include "trapsim/units.hpp"
