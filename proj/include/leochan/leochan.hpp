// SPDX-License-Identifier: Apache-2.0
//
// leochan: LEO satellite-to-ground propagation channel library
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

#pragma once

#include "antenna.hpp"
#include "atmosphere.hpp"
#include "clustering.hpp"
#include "dispersion.hpp"
#include "error.hpp"
#include "fading.hpp"
#include "geometry.hpp"
#include "link_budget.hpp"
#include "mpc.hpp"
#include "ntn.hpp"
#include "special.hpp"
#include "units.hpp"

#include "io/config.hpp"
#include "io/report.hpp"
#include "io/synth.hpp"
#include "io/trace.hpp"
