// Copyright (c) cubereach contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Drives the installed binary through popen and checks exit codes and the
// machine-readable output lines.
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "cubereach/dsl.hpp"

#ifndef CUBEREACH_CLI
#error "CUBEREACH_CLI must point at the binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout + stderr
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(CUBEREACH_CLI) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        result.output.append(buf.data(), n);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string temp_file(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/cubereach_test_") + name;
    std::ofstream f(path);
    f << content;
    return path;
}

} // namespace

TEST_CASE("generate, then decide the counter threshold") {
    RunResult gen = run("generate counter -n 2");
    REQUIRE(gen.exit_code == 0);
    std::string file = temp_file("counter.pv", gen.output);

    RunResult yes = run("check reach " + file +
                        " --src C0+tok=4 --dst Cf --pop 0..6");
    CHECK(yes.exit_code == 0);
    CHECK(yes.output.find("VERDICT yes") != std::string::npos);
    CHECK(yes.output.find("WITNESS") != std::string::npos);

    RunResult no = run("check reach " + file +
                       " --src C0+tok=3 --dst Cf --pop 0..5");
    CHECK(no.exit_code == 1);
    CHECK(no.output.find("VERDICT no") != std::string::npos);

    RunResult bounded = run("check reach " + file +
                            " --src C0 --dst Cf --pop 0..3");
    CHECK(bounded.exit_code == 2);
    CHECK(bounded.output.find("VERDICT bounded-no") != std::string::npos);
}

TEST_CASE("source equal to destination yields an empty witness") {
    std::string file = temp_file(
        "point.pv",
        "rbn m { states: a b; alphabet: x; transitions: a !x b; }\n"
        "cube P of m { a: 1..1; default: 0..0; }\n");
    RunResult same = run("check reach " + file + " --src P --dst P --pop 0..2");
    CHECK(same.exit_code == 0);
    CHECK(same.output.find("VERDICT yes") != std::string::npos);
    // WITNESS header, model line, init line and nothing else
    CHECK(same.output.find("step") == std::string::npos);
}

TEST_CASE("reduction output re-parses and reproduces the verdict") {
    RunResult gen = run("generate counter -n 1");
    std::string file = temp_file("counter1.pv", gen.output);

    RunResult reduced = run("reduce rbn-to-asms " + file + " --model counter");
    REQUIRE(reduced.exit_code == 0);
    cubereach::ParseResult parsed = cubereach::parse_document(reduced.output);
    REQUIRE(parsed.ok());
    CHECK(parsed.document->find_model("counter_asms") != nullptr);
    CHECK(parsed.document->find_cube("C0_asms") != nullptr);
    std::string reduced_file = temp_file("counter1_asms.pv", reduced.output);

    RunResult src_yes = run("check reach " + file +
                            " --src C0+tok=2 --dst Cf --pop 0..3");
    RunResult tgt_yes = run("check reach " + reduced_file +
                            " --src C0_asms+tok=2 --dst Cf_asms --pop 0..3");
    CHECK(src_yes.exit_code == 0);
    CHECK(tgt_yes.exit_code == 0);

    RunResult src_no = run("check reach " + file +
                           " --src C0+tok=1 --dst Cf --pop 0..2");
    RunResult tgt_no = run("check reach " + reduced_file +
                           " --src C0_asms+tok=1 --dst Cf_asms --pop 0..2");
    CHECK(src_no.exit_code == 1);
    CHECK(tgt_no.exit_code == 1);
}

TEST_CASE("simulate is deterministic under a seed") {
    RunResult gen = run("generate counter -n 2");
    std::string file = temp_file("counter_sim.pv", gen.output);
    std::string invocation = "simulate " + file +
                             " --model counter --from tok=3,a1=1 --steps 6 "
                             "--seed 42";
    RunResult a = run(invocation);
    RunResult b = run(invocation);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("model counter") != std::string::npos);

    RunResult other = run("simulate " + file +
                          " --model counter --from tok=3,a1=1 --steps 6 "
                          "--seed 43");
    CHECK(other.exit_code == 0); // usually differs, but must still succeed
}

TEST_CASE("cutoff scan prints one line per population") {
    std::string file = temp_file(
        "cutoff.pv",
        "rbn m { states: q0 q1; alphabet: a; transitions: q0 !a q1; }\n");
    RunResult scan = run("cutoff " + file +
                         " --model m --init q0 --target q1 --range 1..4 "
                         "--window 2");
    CHECK(scan.exit_code == 0);
    CHECK(scan.output.find("K 1 yes") != std::string::npos);
    CHECK(scan.output.find("K 4 yes") != std::string::npos);
    CHECK(scan.output.find("STABILIZATION k=1 polarity=positive") !=
          std::string::npos);
}

TEST_CASE("crp verdicts map to exit codes") {
    RunResult gen = run("generate counter -n 2");
    std::string file = temp_file("crp.pv", gen.output);
    // destination cube: c2 covered
    std::string with_cube =
        gen.output + "\ncube Goal of counter { c2: 1..inf; default: 0..inf; }\n";
    std::string file2 = temp_file("crp2.pv", with_cube);

    RunResult yes = run("crp " + file2 +
                        " --model counter --src-support tok,a1,a2 --dst Goal "
                        "--variant ge1 --kmax 6");
    CHECK(yes.exit_code == 0);

    RunResult no = run("crp " + file2 +
                       " --model counter --src-support a1 --dst Goal "
                       "--variant ge1 --kmax 4");
    CHECK(no.exit_code == 1);
    CHECK(no.output.find("VERDICT no") != std::string::npos);
}

TEST_CASE("normalize-run rewrites a compiled run") {
    RunResult gen = run("generate counter -n 1");
    std::string file = temp_file("norm.pv", gen.output);
    RunResult reduced = run("reduce rbn-to-asms " + file + " --model counter");
    REQUIRE(reduced.exit_code == 0);

    // handcrafted interleaving of two encodings, good to good
    std::string trace =
        "model counter_asms\n"
        "init tok=2,a1=1,reg=#\n"
        "step tok W(1) tok_1_sent\n"
        "step tok W(1) tok_1_sent\n"
        "step a1 R(1) a1_1_b1\n"
        "step tok_1_sent W(#) sent\n"
        "step tok_1_sent W(#) sent\n"
        "step a1_1_b1 W(#) b1\n";
    std::string trace_file = temp_file("norm.trace", trace);
    RunResult norm = run("normalize-run " + file + " --model counter --trace " +
                         trace_file);
    CHECK(norm.exit_code == 0);
    CHECK(norm.output.find("NORMALIZED") != std::string::npos);
    CHECK(norm.output.find("DECODED") != std::string::npos);
    CHECK(norm.output.find("step tok !1 sent + a1 ?1 b1") != std::string::npos);
}

TEST_CASE("bad invocations exit above two") {
    CHECK(run("frobnicate").exit_code > 2);
    CHECK(run("check reach --no-such-flag").exit_code > 2);
    std::string file = temp_file("broken.pv", "rbn m { states }");
    CHECK(run("check reach " + file + " --src a --dst b").exit_code > 2);
    RunResult usage = run("check reach");
    CHECK(usage.exit_code > 2);
    CHECK(!usage.output.empty());
}
