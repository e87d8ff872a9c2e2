#include <gtest/gtest.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <string>

#include "claimdecomp/error.hpp"
#include "claimdecomp/protocol/adapter_client.hpp"
#include "claimdecomp/protocol/subprocess.hpp"
#include "support.hpp"

using namespace claimdecomp;
using namespace std::chrono_literals;

TEST(Subprocess, EchoesLines) {
    Subprocess p("cat");
    p.write_line("first");
    p.write_line("second line");
    EXPECT_EQ(p.read_line(2s), "first");
    EXPECT_EQ(p.read_line(2s), "second line");
}

TEST(Subprocess, ReportsEndOfOutput) {
    Subprocess p("printf 'one\\ntwo'");
    EXPECT_EQ(p.read_line(2s), "one");
    EXPECT_EQ(p.read_line(2s), "two");  // unterminated last line
    EXPECT_EQ(p.read_line(2s), std::nullopt);
}

TEST(Subprocess, TimesOutOnSilence) {
    Subprocess p("sleep 30");
    const auto start = std::chrono::steady_clock::now();
    EXPECT_THROW(p.read_line(100ms), TimeoutError);
    EXPECT_LT(std::chrono::steady_clock::now() - start, 5s);
}

TEST(AdapterClient, HandshakeAndEntail) {
    AdapterClient c(testsupport::mock_adapter());
    EXPECT_EQ(c.info().name, "mock-adapter");
    EXPECT_EQ(c.info().version, "1");
    EXPECT_TRUE(c.info().bounded);
    EXPECT_DOUBLE_EQ(c.entail("taxes rose sharply", "taxes rose"), 1.0);
    EXPECT_DOUBLE_EQ(c.entail("taxes rose sharply", "crime fell"), 0.0);
    EXPECT_DOUBLE_EQ(c.entail("Taxes fell.", "taxes rose"), 0.5);
}

TEST(AdapterClient, RequestsAreWellFormedJson) {
    const std::string log = ::testing::TempDir() + "adapter_requests.log";
    std::remove(log.c_str());
    {
        AdapterClient c(testsupport::mock_adapter("--log=" + log));
        c.entail("a \"quoted\"\npremise", "h");
        c.convert("Is it?");
    }
    std::ifstream in(log);
    std::string l1, l2, l3;
    std::getline(in, l1);
    std::getline(in, l2);
    std::getline(in, l3);
    EXPECT_EQ(l1, R"({"op":"hello"})");
    EXPECT_EQ(l2, R"({"hypothesis":"h","op":"entail","premise":"a \"quoted\"\npremise"})");
    EXPECT_EQ(l3, R"({"op":"convert","question":"Is it?"})");
}

TEST(AdapterClient, BoundedScoresAreChecked) {
    AdapterClient bounded(testsupport::mock_adapter("--score=1.5"));
    EXPECT_THROW(bounded.entail("p", "h"), ProtocolError);
    AdapterClient unbounded(testsupport::mock_adapter("--score=1.5 --unbounded"));
    EXPECT_FALSE(unbounded.info().bounded);
    EXPECT_DOUBLE_EQ(unbounded.entail("p", "h"), 1.5);
}

TEST(AdapterClient, HandshakeFailures) {
    EXPECT_THROW(AdapterClient(testsupport::mock_adapter("--exit-before-hello")), ProtocolError);
    EXPECT_THROW(AdapterClient(testsupport::mock_adapter("--no-bounded")), ProtocolError);
    EXPECT_THROW(AdapterClient(testsupport::mock_adapter("--error-on=hello")), ProtocolError);
    EXPECT_THROW(AdapterClient(testsupport::mock_adapter("--garbage-on=hello")), ProtocolError);
    EXPECT_THROW(AdapterClient("exit 0"), ProtocolError);
}

TEST(AdapterClient, RequestFailures) {
    AdapterClient erroring(testsupport::mock_adapter("--error-on=entail"));
    EXPECT_THROW(erroring.entail("p", "h"), ProtocolError);

    AdapterClient garbled(testsupport::mock_adapter("--garbage-on=entail"));
    EXPECT_THROW(garbled.entail("p", "h"), ProtocolError);

    AdapterClient quitting(testsupport::mock_adapter("--exit-after=1"));
    EXPECT_THROW(quitting.entail("p", "h"), ProtocolError);
}

TEST(AdapterClient, TimeoutIsAProtocolError) {
    AdapterClient hanging(testsupport::mock_adapter("--hang-on=entail"), 200ms);
    const auto start = std::chrono::steady_clock::now();
    EXPECT_THROW(hanging.entail("p", "h"), TimeoutError);
    EXPECT_LT(std::chrono::steady_clock::now() - start, 5s);
}
