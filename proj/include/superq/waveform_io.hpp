/* Copyright 2026 The superq Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Waveform CSV format:
//
//   # tau=<seconds> n_steps=<N>
//   t,<ch1>,<ch2>,...
//   <N+1 rows of t_m and samples>
//
// Values are written with 17 significant digits so a write/read cycle is
// exact. Reading checks the time column against the uniform grid.

#pragma once

#include <filesystem>
#include <iosfwd>

#include "superq/waveform.hpp"

namespace superq {

void write_waveform_csv(std::ostream& out, const Waveform& wf);
void write_waveform_csv(const std::filesystem::path& path, const Waveform& wf);

// Throws ParseError (with line number) or GridMismatch.
Waveform read_waveform_csv(std::istream& in);
Waveform read_waveform_csv(const std::filesystem::path& path);

}  // namespace superq
