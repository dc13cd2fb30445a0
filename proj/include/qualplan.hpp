// Copyright 2026 The qualplan Authors
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


#pragma once

#include "qualplan/belief.hpp"
#include "qualplan/errors.hpp"
#include "qualplan/gridworld.hpp"
#include "qualplan/model_io.hpp"
#include "qualplan/models.hpp"
#include "qualplan/one_stage.hpp"
#include "qualplan/oracle.hpp"
#include "qualplan/pi_mdp_solver.hpp"
#include "qualplan/pi_pomdp_solver.hpp"
#include "qualplan/scale.hpp"
#include "qualplan/stochastic.hpp"
#include "qualplan/trace.hpp"
