#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>

#include "tsnlab/uadp.hpp"

using namespace tsnlab::uadp;

namespace {

std::vector<std::uint8_t> read_hex_line(const std::string& name) {
    std::ifstream in(std::string(TSNLAB_TEST_DATA) + "/" + name);
    REQUIRE(in);
    std::string line;
    std::getline(in, line);
    return from_hex(line);
}

NetworkMessage three_field_message() {
    const std::int64_t values[] = {1, 2, 3};
    return make_experiment_message(1, 1, 1, 1'000'000'000, values);
}

CodecError::Kind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const CodecError& e) {
        return e.kind();
    }
    FAIL("no CodecError thrown");
    return CodecError::Kind::Truncated;
}

} // namespace

TEST_CASE("frame sizes for the six experiment payloads") {
    CHECK(frame_sizes(3) == FrameSizes{59, 81, 101});
    CHECK(frame_sizes(12) == FrameSizes{140, 162, 182});
    CHECK(frame_sizes(30) == FrameSizes{302, 324, 344});
    CHECK(frame_sizes(65) == FrameSizes{617, 639, 659});
    CHECK(frame_sizes(136) == FrameSizes{1256, 1278, 1298});
    CHECK(frame_sizes(163) == FrameSizes{1499, 1521, 1541});
}

TEST_CASE("frame size limits") {
    CHECK(kind_of([] { frame_sizes(164); }) == CodecError::Kind::Oversize);
    CHECK_THROWS_AS(frame_sizes(0), std::invalid_argument);
}

TEST_CASE("encoded length is 32 + 9n") {
    for (std::size_t n = 1; n <= 163; ++n) {
        std::vector<std::int64_t> values(n, 7);
        const auto msg = make_experiment_message(9, 2, 3, 4, values);
        CHECK(encoded_size(msg) == kHeaderBlockBytes + kFieldBytes * n);
        CHECK(encode_network_message(msg).size() == 32 + 9 * n);
    }
}

TEST_CASE("golden vector") {
    const auto golden = read_hex_line("uadp_golden.hex");
    REQUIRE(golden.size() == 59);
    const auto msg = decode_network_message(golden);
    CHECK(msg == three_field_message());
    REQUIRE(msg.payload.size() == 3);
    CHECK(msg.payload[2].value == 3);
    CHECK(encode_network_message(three_field_message()) == golden);
}

TEST_CASE("roundtrip of random messages") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 500; ++i) {
        NetworkMessage m;
        m.publisher_id = rng();
        m.dataset_class = static_cast<std::uint8_t>(rng());
        if (rng() & 1) m.group_header = GroupHeader{static_cast<std::uint16_t>(rng()), static_cast<std::uint16_t>(rng())};
        if (rng() & 1) {
            PayloadHeader p;
            for (std::uint64_t k = rng() % 4; k > 0; --k) p.writer_ids.push_back(static_cast<std::uint16_t>(rng()));
            m.payload_header = p;
        }
        if (rng() & 1) m.extended_header = ExtendedHeader{static_cast<std::int64_t>(rng())};
        for (std::uint64_t k = rng() % 40; k > 0; --k) {
            m.payload.push_back({static_cast<std::uint8_t>(rng()), static_cast<std::int64_t>(rng())});
        }
        m.flags = flags_for(m);
        CHECK(decode_network_message(encode_network_message(m)) == m);
    }
}

TEST_CASE("decode errors") {
    const auto golden = read_hex_line("uadp_golden.hex");
    const std::span<const std::uint8_t> bytes(golden);

    CHECK(kind_of([&] { decode_network_message(bytes.first(10)); }) == CodecError::Kind::Truncated);

    auto v = golden;
    v[0] = 2;
    CHECK(kind_of([&] { decode_network_message(v); }) == CodecError::Kind::UnknownVersion);

    v = golden;
    v[1] |= kSecurityFlag;
    CHECK(kind_of([&] { decode_network_message(v); }) == CodecError::Kind::FlagMismatch);

    v = golden;
    v.pop_back();
    CHECK(kind_of([&] { decode_network_message(v); }) == CodecError::Kind::LengthMismatch);
}

TEST_CASE("encode rejects inconsistent flags and oversize messages") {
    auto m = three_field_message();
    m.flags = 0;
    CHECK(kind_of([&] { encode_network_message(m); }) == CodecError::Kind::FlagMismatch);

    std::vector<std::int64_t> values(164, 1);
    const auto big = make_experiment_message(1, 1, 1, 0, values);
    CHECK(kind_of([&] { encode_network_message(big); }) == CodecError::Kind::Oversize);
}

TEST_CASE("endpoint urls") {
    const auto ep = parse_endpoint("opc.eth://01-00-5e-00-00-01:10.3");
    CHECK(ep.mac.to_string() == "01-00-5E-00-00-01");
    CHECK(ep.mac.is_multicast());
    CHECK(ep.vlan_id == 10);
    CHECK(ep.pcp == 3);
    CHECK(ep.to_url() == "opc.eth://01-00-5E-00-00-01:10.3");

    const auto plain = parse_endpoint("opc.eth://aa-bb-cc-dd-ee-ff");
    CHECK(plain.mac.to_string() == "AA-BB-CC-DD-EE-FF");
    CHECK_FALSE(plain.vlan_id);
    CHECK_FALSE(plain.pcp);
    CHECK(plain.effective_pcp() == 0);

    const auto vlan_only = parse_endpoint("opc.eth://aa-bb-cc-dd-ee-ff:4094");
    CHECK(vlan_only.vlan_id == 4094);
    CHECK_FALSE(vlan_only.pcp);
}

TEST_CASE("endpoint errors") {
    for (const char* url : {"opc.eth://aa:bb:cc:dd:ee:ff", "opc.eth://aa-bb-cc-dd-ee-ff:4095",
                            "opc.eth://aa-bb-cc-dd-ee-ff:10.8", "opc.eth://aa-bb-cc-dd-ee-ff:.3",
                            "opc.eth://aa-bb-cc-dd-ee", "opc.eth://zz-bb-cc-dd-ee-ff", "eth://aa-bb-cc-dd-ee-ff",
                            "opc.eth://aa-bb-cc-dd-ee-ff:10."}) {
        CAPTURE(url);
        CHECK(kind_of([&] { parse_endpoint(url); }) == CodecError::Kind::BadEndpoint);
    }
    try {
        parse_endpoint("opc.eth://aa:bb:cc:dd:ee:ff");
    } catch (const CodecError& e) {
        CHECK(std::string(e.what()).find("hyphens") != std::string::npos);
    }
    Endpoint ep{parse_mac("aa-bb-cc-dd-ee-ff"), std::nullopt, 3};
    CHECK_THROWS_AS(ep.to_url(), CodecError);
}

TEST_CASE("frames") {
    const auto ep = parse_endpoint("opc.eth://01-00-5e-00-00-01:10.3");
    const auto f = build_frame(three_field_message(), ep, parse_mac("02-00-00-00-00-01"));
    CHECK(f.link_bytes() == 81);
    CHECK(f.physical_bytes() == 101);
    CHECK(f.pcp == 3);
    CHECK(f.vlan_id == 10);
    CHECK(f.ethertype == 0xb62c);

    const auto bytes = f.serialize();
    CHECK(bytes == read_hex_line("frame_golden.hex"));
    CHECK(Frame::parse(bytes) == f);

    auto corrupt = bytes;
    corrupt[20] ^= 0x01;
    CHECK_THROWS_AS(Frame::parse(corrupt), CodecError);

    const auto untagged_pcp = build_frame(three_field_message(), parse_endpoint("opc.eth://01-00-5e-00-00-01"));
    CHECK(untagged_pcp.pcp == 0);
}
