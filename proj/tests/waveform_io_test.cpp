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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "superq/errors.hpp"
#include "superq/waveform_io.hpp"

namespace superq {
namespace {

TEST(WaveformCsv, RoundTripIsExact) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  std::vector<double> a(65), b(65);
  for (int m = 0; m <= 64; ++m) a[m] = u(rng), b[m] = u(rng);
  const Waveform wf(3.3e-5, {{"omega1", a}, {"delta_omega", b}});
  std::stringstream ss;
  write_waveform_csv(ss, wf);
  const Waveform back = read_waveform_csv(ss);
  EXPECT_TRUE(back == wf);
}

TEST(WaveformCsv, TanhTanRoundTrip) {
  const Waveform wf = tanh_tan(table_qs50_pulse(), 50e-6, 512);
  std::stringstream ss;
  write_waveform_csv(ss, wf);
  EXPECT_TRUE(read_waveform_csv(ss) == wf);
}

TEST(WaveformCsv, Format) {
  std::stringstream ss;
  write_waveform_csv(ss, hard_pulse(2.0, 4.0, 2));
  EXPECT_EQ(ss.str(),
            "# tau=4 n_steps=2\n"
            "t,omega1,delta_omega\n"
            "0,2,0\n2,2,0\n4,2,0\n");
}

TEST(WaveformCsv, RaggedRowsAreGridMismatch) {
  std::stringstream ss("# tau=4 n_steps=2\nt,a,b\n0,1,2\n2,1\n4,1,2\n");
  EXPECT_THROW(read_waveform_csv(ss), GridMismatch);
}

TEST(WaveformCsv, WrongRowCountIsGridMismatch) {
  std::stringstream ss("# tau=4 n_steps=3\nt,a\n0,1\n2,1\n4,1\n");
  EXPECT_THROW(read_waveform_csv(ss), GridMismatch);
}

TEST(WaveformCsv, NonUniformTimesAreGridMismatch) {
  std::stringstream ss("# tau=4 n_steps=2\nt,a\n0,1\n2.5,1\n4,1\n");
  EXPECT_THROW(read_waveform_csv(ss), GridMismatch);
}

TEST(WaveformCsv, HeaderOnlyIsParseError) {
  std::stringstream ss("# tau=4 n_steps=2\nt,a\n");
  EXPECT_THROW(read_waveform_csv(ss), ParseError);
}

TEST(WaveformCsv, ParseErrorCarriesLine) {
  std::stringstream ss("# tau=4 n_steps=2\nt,a\n0,1\n2,x\n4,1\n");
  try {
    read_waveform_csv(ss);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(WaveformCsv, MissingHeaderIsParseError) {
  std::stringstream ss("t,a\n0,1\n2,1\n4,1\n");
  EXPECT_THROW(read_waveform_csv(ss), ParseError);
}

}  // namespace
}  // namespace superq
