#include "tsnlab/uadp.hpp"

#include <charconv>

namespace tsnlab::uadp {

namespace {

constexpr std::string_view kScheme = "opc.eth://";

[[noreturn]] void bad(const std::string& why) {
    throw CodecError(CodecError::Kind::BadEndpoint, "endpoint: " + why);
}

bool parse_uint(std::string_view text, unsigned& out) {
    if (text.empty()) return false;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

} // namespace

std::string MacAddress::to_string() const {
    static constexpr char kDigits[] = "0123456789ABCDEF";
    std::string s;
    s.reserve(17);
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        if (i) s.push_back('-');
        s.push_back(kDigits[bytes[i] >> 4]);
        s.push_back(kDigits[bytes[i] & 0xf]);
    }
    return s;
}

MacAddress parse_mac(std::string_view text) {
    // Six two-digit groups separated by hyphens; colons are not part of the grammar.
    if (text.size() != 17) bad("bad MAC '" + std::string(text) + "'");
    MacAddress mac;
    for (std::size_t i = 0; i < 6; ++i) {
        const std::size_t at = i * 3;
        const int hi = hex_value(text[at]);
        const int lo = hex_value(text[at + 1]);
        if (hi < 0 || lo < 0) bad("bad MAC '" + std::string(text) + "'");
        if (i < 5 && text[at + 2] != '-') bad("MAC bytes must be separated by hyphens: '" + std::string(text) + "'");
        mac.bytes[i] = static_cast<std::uint8_t>(hi << 4 | lo);
    }
    return mac;
}

Endpoint parse_endpoint(std::string_view url) {
    if (!url.starts_with(kScheme)) bad("missing opc.eth:// scheme");
    std::string_view rest = url.substr(kScheme.size());

    Endpoint ep;
    const auto colon = rest.find(':');
    const auto host = rest.substr(0, colon);
    // A colon-separated MAC shows up as a host followed by non-numeric "VLAN" text;
    // report it as a MAC error rather than a VLAN error.
    if (colon != std::string_view::npos && host.size() == 2 && rest.size() >= 17) {
        bad("MAC bytes must be separated by hyphens: '" + std::string(rest) + "'");
    }
    ep.mac = parse_mac(host);
    if (colon == std::string_view::npos) return ep;

    std::string_view vlan = rest.substr(colon + 1);
    std::string_view prio;
    if (const auto dot = vlan.find('.'); dot != std::string_view::npos) {
        prio = vlan.substr(dot + 1);
        vlan = vlan.substr(0, dot);
        if (prio.empty()) bad("empty VLAN priority");
    }
    unsigned vid = 0;
    if (!parse_uint(vlan, vid)) bad("bad VLAN id '" + std::string(vlan) + "'");
    if (vid > 4094) bad("VLAN id " + std::to_string(vid) + " out of range 0..4094");
    ep.vlan_id = static_cast<std::uint16_t>(vid);
    if (!prio.empty()) {
        unsigned pcp = 0;
        if (!parse_uint(prio, pcp)) bad("bad VLAN priority '" + std::string(prio) + "'");
        if (pcp > 7) bad("VLAN priority " + std::to_string(pcp) + " out of range 0..7");
        ep.pcp = static_cast<std::uint8_t>(pcp);
    }
    return ep;
}

std::string Endpoint::to_url() const {
    if (pcp && !vlan_id) bad("priority without VLAN id");
    std::string s(kScheme);
    s += mac.to_string();
    if (vlan_id) {
        s += ':' + std::to_string(*vlan_id);
        if (pcp) s += '.' + std::to_string(*pcp);
    }
    return s;
}

} // namespace tsnlab::uadp
