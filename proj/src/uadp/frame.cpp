#include "tsnlab/uadp.hpp"

#include <zlib.h>

#include <algorithm>

namespace tsnlab::uadp {

namespace {

void put_be16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

std::uint16_t get_be16(std::span<const std::uint8_t> in, std::size_t at) {
    return static_cast<std::uint16_t>(in[at] << 8 | in[at + 1]);
}

std::uint32_t fcs_of(std::span<const std::uint8_t> bytes) {
    return static_cast<std::uint32_t>(crc32(0L, bytes.data(), static_cast<uInt>(bytes.size())));
}

} // namespace

FrameSizes sizes_for_uadp(std::size_t uadp_bytes) {
    FrameSizes s;
    s.uadp_bytes = uadp_bytes;
    s.link_bytes = uadp_bytes + kLinkOverheadBytes;
    s.physical_bytes = s.link_bytes + kPhysicalOverheadBytes;
    if (s.link_bytes > kMaxLinkFrameBytes) {
        throw CodecError(CodecError::Kind::Oversize, "frame: link size " + std::to_string(s.link_bytes) +
                                                         " exceeds " + std::to_string(kMaxLinkFrameBytes));
    }
    return s;
}

FrameSizes frame_sizes(std::size_t n_vars) {
    if (n_vars < 1) throw std::invalid_argument("frame_sizes: at least one variable is required");
    return sizes_for_uadp(kHeaderBlockBytes + kFieldBytes * n_vars);
}

std::size_t Frame::link_bytes() const {
    return kEthernetHeaderBytes + (vlan_tagged ? kVlanTagBytes : 0) + payload.size() + kFcsBytes;
}

std::vector<std::uint8_t> Frame::serialize() const {
    if (vlan_id > 4094 || pcp > 7) throw CodecError(CodecError::Kind::BadEndpoint, "frame: bad VLAN tag");
    if (link_bytes() > kMaxLinkFrameBytes) {
        throw CodecError(CodecError::Kind::Oversize, "frame: link size " + std::to_string(link_bytes()) +
                                                         " exceeds " + std::to_string(kMaxLinkFrameBytes));
    }
    std::vector<std::uint8_t> out;
    out.reserve(link_bytes());
    out.insert(out.end(), dst.bytes.begin(), dst.bytes.end());
    out.insert(out.end(), src.bytes.begin(), src.bytes.end());
    if (vlan_tagged) {
        put_be16(out, kVlanTpid);
        put_be16(out, static_cast<std::uint16_t>(pcp << 13 | vlan_id));
    }
    put_be16(out, ethertype);
    out.insert(out.end(), payload.begin(), payload.end());
    // FCS goes out least significant byte first.
    const auto fcs = fcs_of(out);
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(fcs >> (8 * i)));
    return out;
}

Frame Frame::parse(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kEthernetHeaderBytes + kFcsBytes) {
        throw CodecError(CodecError::Kind::Truncated, "frame: " + std::to_string(bytes.size()) + " bytes is too short");
    }
    const auto body = bytes.first(bytes.size() - kFcsBytes);
    std::uint32_t fcs = 0;
    for (int i = 0; i < 4; ++i) fcs |= std::uint32_t{bytes[body.size() + i]} << (8 * i);
    if (fcs != fcs_of(body)) throw CodecError(CodecError::Kind::LengthMismatch, "frame: FCS mismatch");

    Frame f;
    std::copy_n(body.begin(), 6, f.dst.bytes.begin());
    std::copy_n(body.begin() + 6, 6, f.src.bytes.begin());
    std::size_t at = 12;
    if (get_be16(body, at) == kVlanTpid) {
        if (body.size() < kEthernetHeaderBytes + kVlanTagBytes) {
            throw CodecError(CodecError::Kind::Truncated, "frame: truncated VLAN tag");
        }
        const auto tci = get_be16(body, at + 2);
        f.vlan_tagged = true;
        f.pcp = static_cast<std::uint8_t>(tci >> 13);
        f.vlan_id = tci & 0x0fff;
        at += kVlanTagBytes;
    } else {
        f.vlan_tagged = false;
    }
    f.ethertype = get_be16(body, at);
    at += 2;
    f.payload.assign(body.begin() + static_cast<std::ptrdiff_t>(at), body.end());
    return f;
}

Frame build_frame(const NetworkMessage& msg, const Endpoint& ep, const MacAddress& src) {
    Frame f;
    f.dst = ep.mac;
    f.src = src;
    f.vlan_tagged = true;
    f.vlan_id = ep.vlan_id.value_or(0);
    f.pcp = ep.effective_pcp();
    f.ethertype = kEtherType;
    f.payload = encode_network_message(msg);
    return f;
}

} // namespace tsnlab::uadp
