// Copyright 2026 The dhg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "dhg/graph.h"

namespace dhg {

/// Snapshot container version written by save_graph. See docs/snapshot_format.md.
inline constexpr int kSnapshotVersion = 1;

void write_snapshot(const Graph& g, std::ostream& out);
/// Throws FormatVersionMismatch, FormatError, plus any graph-core error the
/// content triggers.
Graph read_snapshot(std::istream& in);

/// Throws IoError on open/write failure.
void save_graph(const Graph& g, const std::filesystem::path& path);
Graph load_graph(const std::filesystem::path& path);

std::string snapshot_string(const Graph& g);

/// 64-bit FNV-1a over the canonical snapshot bytes.
std::uint64_t structural_hash(const Graph& g);

}  // namespace dhg
