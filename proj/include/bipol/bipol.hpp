// Copyright 2026 The bipol Authors
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

// Umbrella header for the library (the CLI lives in bipol/cli.hpp).

#include "bipol/chart.hpp"
#include "bipol/classify.hpp"
#include "bipol/corpusio.hpp"
#include "bipol/error.hpp"
#include "bipol/evaluate.hpp"
#include "bipol/explain.hpp"
#include "bipol/lexica.hpp"
#include "bipol/matcher.hpp"
#include "bipol/metric.hpp"
#include "bipol/report.hpp"
#include "bipol/sentence.hpp"
#include "bipol/textnorm.hpp"
#include "bipol/version.hpp"
