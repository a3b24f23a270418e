// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>

namespace icebox::cli {

// Shipped experiment configs keyed by recipe name. Generated at build time
// from tools/icebox/recipes/*.json.
const std::map<std::string, std::string>& recipes();

}  // namespace icebox::cli
