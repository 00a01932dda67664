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

#include "superq/waveform_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "superq/errors.hpp"
#include "superq/text.hpp"

namespace superq {

void write_waveform_csv(std::ostream& out, const Waveform& wf) {
  out << "# tau=" << format_double(wf.tau()) << " n_steps=" << wf.n_steps()
      << '\n';
  out << 't';
  for (const Channel& c : wf.channels()) out << ',' << c.name;
  out << '\n';
  for (int m = 0; m <= wf.n_steps(); ++m) {
    out << format_double(wf.time(m));
    for (const Channel& c : wf.channels()) {
      out << ',' << format_double(c.samples[m]);
    }
    out << '\n';
  }
}

void write_waveform_csv(const std::filesystem::path& path,
                        const Waveform& wf) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_waveform_csv(out, wf);
}

namespace {

double parse_number(std::string_view text, std::size_t line) {
  double v = 0.0;
  if (!parse_double(text, v)) {
    throw ParseError(line, "not a number: '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

Waveform read_waveform_csv(std::istream& in) {
  std::string text;
  std::size_t line_no = 0;

  if (!std::getline(in, text)) throw ParseError(1, "empty file");
  ++line_no;
  double tau = 0.0;
  long n_steps = 0;
  {
    const std::string prefix = "# tau=";
    const auto pos = text.find(" n_steps=");
    if (text.rfind(prefix, 0) != 0 || pos == std::string::npos) {
      throw ParseError(line_no, "expected '# tau=<s> n_steps=<N>' header");
    }
    tau = parse_number(
        std::string_view(text).substr(prefix.size(), pos - prefix.size()),
        line_no);
    const double n =
        parse_number(std::string_view(text).substr(pos + 9), line_no);
    if (n != std::floor(n) || n < 2) {
      throw ParseError(line_no, "n_steps must be an integer >= 2");
    }
    n_steps = static_cast<long>(n);
  }

  if (!std::getline(in, text)) throw ParseError(line_no + 1, "missing column header");
  ++line_no;
  const std::vector<std::string> header = split(text, ',');
  if (header.size() < 2 || header.front() != "t") {
    throw ParseError(line_no, "column header must start with 't,'");
  }

  std::vector<Channel> channels;
  for (std::size_t k = 1; k < header.size(); ++k) {
    channels.push_back({header[k], {}});
  }
  std::vector<double> times;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.empty()) continue;
    const std::vector<std::string> fields = split(text, ',');
    if (fields.size() != header.size()) {
      throw GridMismatch("line " + std::to_string(line_no) + ": expected " +
                         std::to_string(header.size()) + " fields, got " +
                         std::to_string(fields.size()));
    }
    times.push_back(parse_number(fields[0], line_no));
    for (std::size_t k = 1; k < fields.size(); ++k) {
      channels[k - 1].samples.push_back(parse_number(fields[k], line_no));
    }
  }
  if (times.empty()) throw ParseError(line_no, "no data rows");
  if (times.size() != static_cast<std::size_t>(n_steps) + 1) {
    throw GridMismatch("expected " + std::to_string(n_steps + 1) +
                       " rows, got " + std::to_string(times.size()));
  }
  Waveform wf(tau, std::move(channels));
  for (int m = 0; m <= wf.n_steps(); ++m) {
    if (std::abs(times[m] - wf.time(m)) > 1e-9 * tau) {
      throw GridMismatch("time column is not the uniform grid at row " +
                         std::to_string(m));
    }
  }
  return wf;
}

Waveform read_waveform_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_waveform_csv(in);
}

}  // namespace superq
