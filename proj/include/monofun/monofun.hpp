// Copyright 2026 The monofun Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "monofun/baselines.hpp"
#include "monofun/ea.hpp"
#include "monofun/encodings.hpp"
#include "monofun/error.hpp"
#include "monofun/experiment.hpp"
#include "monofun/fitness.hpp"
#include "monofun/monotonicity.hpp"
#include "monofun/rng.hpp"
#include "monofun/run_io.hpp"
#include "monofun/truth_table.hpp"
#include "monofun/walsh.hpp"
