#pragma once

// UADP NetworkMessage codec, OPC UA Ethernet endpoint URLs and the raw
// Ethernet/VLAN encapsulation used to carry them.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tsnlab::uadp {

inline constexpr std::uint16_t kEtherType = 0xb62c;
inline constexpr std::uint16_t kVlanTpid = 0x8100;

inline constexpr std::size_t kEthernetHeaderBytes = 14;
inline constexpr std::size_t kVlanTagBytes = 4;
inline constexpr std::size_t kFcsBytes = 4;
inline constexpr std::size_t kPreambleBytes = 8;
inline constexpr std::size_t kInterFrameGapBytes = 12;
inline constexpr std::size_t kMaxLinkFrameBytes = 1522;

/// Link overhead of a VLAN-tagged frame around the UADP message.
inline constexpr std::size_t kLinkOverheadBytes = kEthernetHeaderBytes + kVlanTagBytes + kFcsBytes;
/// Physical-layer overhead on top of the link frame.
inline constexpr std::size_t kPhysicalOverheadBytes = kPreambleBytes + kInterFrameGapBytes;

/// Size of the header block when every optional header is present with one writer.
inline constexpr std::size_t kHeaderBlockBytes = 32;
inline constexpr std::size_t kFieldBytes = 9;
inline constexpr std::size_t kReservedBytes = 6;

inline constexpr std::uint8_t kProtocolVersion = 1;
/// Built-in type id for Int64.
inline constexpr std::uint8_t kInt64TypeTag = 8;

enum Flags : std::uint8_t {
    kGroupHeaderFlag = 0x01,
    kPayloadHeaderFlag = 0x02,
    kExtendedHeaderFlag = 0x04,
    /// Reserved for the security header; never set by this codec.
    kSecurityFlag = 0x80,
};
inline constexpr std::uint8_t kKnownFlags = kGroupHeaderFlag | kPayloadHeaderFlag | kExtendedHeaderFlag;

struct DataSetField {
    std::uint8_t type_tag = kInt64TypeTag;
    std::int64_t value = 0;
    bool operator==(const DataSetField&) const = default;
};

struct GroupHeader {
    std::uint16_t message_number = 0;
    std::uint16_t sequence_number = 0;
    bool operator==(const GroupHeader&) const = default;
};

struct PayloadHeader {
    std::vector<std::uint16_t> writer_ids;
    bool operator==(const PayloadHeader&) const = default;
};

struct ExtendedHeader {
    std::int64_t timestamp_ns = 0;
    bool operator==(const ExtendedHeader&) const = default;
};

struct NetworkMessage {
    std::uint8_t protocol_version = kProtocolVersion;
    std::uint8_t flags = 0;
    std::uint64_t publisher_id = 0;
    std::uint8_t dataset_class = 0;
    std::optional<GroupHeader> group_header;
    std::optional<PayloadHeader> payload_header;
    std::optional<ExtendedHeader> extended_header;
    std::vector<DataSetField> payload;

    bool operator==(const NetworkMessage&) const = default;
};

/// Flag byte implied by which optional headers are present.
std::uint8_t flags_for(const NetworkMessage& msg);

/// Message with every optional header present, one writer and one Int64 field per value.
NetworkMessage make_experiment_message(std::uint64_t publisher_id, std::uint16_t writer_id,
                                       std::uint16_t sequence_number, std::int64_t timestamp_ns,
                                       std::span<const std::int64_t> values);

class CodecError : public std::runtime_error {
public:
    enum class Kind { Truncated, UnknownVersion, FlagMismatch, LengthMismatch, Oversize, BadEndpoint };
    CodecError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

std::size_t encoded_size(const NetworkMessage& msg);
std::vector<std::uint8_t> encode_network_message(const NetworkMessage& msg);
NetworkMessage decode_network_message(std::span<const std::uint8_t> bytes);

// --- addressing -------------------------------------------------------------

struct MacAddress {
    std::array<std::uint8_t, 6> bytes{};

    /// Uppercase, hyphen separated: 01-00-5E-00-00-01.
    std::string to_string() const;
    bool is_multicast() const { return (bytes[0] & 0x01) != 0; }
    auto operator<=>(const MacAddress&) const = default;
};

MacAddress parse_mac(std::string_view text);

struct Endpoint {
    MacAddress mac;
    std::optional<std::uint16_t> vlan_id;
    std::optional<std::uint8_t> pcp;

    std::uint8_t effective_pcp() const { return pcp.value_or(0); }
    std::string to_url() const;
    bool operator==(const Endpoint&) const = default;
};

/// Parses `opc.eth://host[:VLAN ID[.VLAN priority]]` where host is a hyphenated MAC.
Endpoint parse_endpoint(std::string_view url);

// --- frames -----------------------------------------------------------------

struct FrameSizes {
    std::size_t uadp_bytes = 0;
    std::size_t link_bytes = 0;
    std::size_t physical_bytes = 0;
    bool operator==(const FrameSizes&) const = default;
};

/// Sizes of the experiment frame carrying `n_vars` Int64 fields.
FrameSizes frame_sizes(std::size_t n_vars);
/// Sizes of a VLAN-tagged frame around `uadp_bytes` of payload.
FrameSizes sizes_for_uadp(std::size_t uadp_bytes);

struct Frame {
    MacAddress dst;
    MacAddress src;
    bool vlan_tagged = true;
    std::uint16_t vlan_id = 0;
    std::uint8_t pcp = 0;
    std::uint16_t ethertype = kEtherType;
    std::vector<std::uint8_t> payload;

    std::size_t link_bytes() const;
    std::size_t physical_bytes() const { return link_bytes() + kPhysicalOverheadBytes; }

    /// Link-layer bytes including the trailing FCS.
    std::vector<std::uint8_t> serialize() const;
    /// Inverse of serialize(); verifies the FCS.
    static Frame parse(std::span<const std::uint8_t> bytes);

    bool operator==(const Frame&) const = default;
};

Frame build_frame(const NetworkMessage& msg, const Endpoint& ep, const MacAddress& src = {});

// --- hex dump helpers for golden vectors ------------------------------------

std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(std::string_view text);

} // namespace tsnlab::uadp
