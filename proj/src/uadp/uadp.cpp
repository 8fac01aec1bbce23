#include "tsnlab/uadp.hpp"

#include <cctype>

namespace tsnlab::uadp {

namespace {

// Little-endian writer/reader over a byte buffer.
class Writer {
public:
    explicit Writer(std::size_t reserve) { out_.reserve(reserve); }

    void u8(std::uint8_t v) { out_.push_back(v); }
    void u16(std::uint16_t v) { put(v, 2); }
    void u64(std::uint64_t v) { put(v, 8); }
    void zeros(std::size_t n) { out_.insert(out_.end(), n, 0); }

    std::vector<std::uint8_t> take() { return std::move(out_); }

private:
    void put(std::uint64_t v, int n) {
        for (int i = 0; i < n; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    std::vector<std::uint8_t> out_;
};

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

    std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
    std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
    std::uint64_t u64() { return get(8); }
    void skip(std::size_t n) {
        need(n);
        pos_ += n;
    }
    std::size_t remaining() const { return in_.size() - pos_; }

private:
    void need(std::size_t n) const {
        if (remaining() < n) {
            throw CodecError(CodecError::Kind::Truncated,
                             "uadp: truncated buffer at byte " + std::to_string(pos_) + " (need " +
                                 std::to_string(n) + ", have " + std::to_string(remaining()) + ")");
        }
    }
    std::uint64_t get(int n) {
        need(static_cast<std::size_t>(n));
        std::uint64_t v = 0;
        for (int i = 0; i < n; ++i) v |= std::uint64_t{in_[pos_ + i]} << (8 * i);
        pos_ += static_cast<std::size_t>(n);
        return v;
    }

    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

// version, flags, publisher id, dataset class
constexpr std::size_t kMessageHeaderBytes = 1 + 1 + 8 + 1;

} // namespace

std::uint8_t flags_for(const NetworkMessage& msg) {
    std::uint8_t f = 0;
    if (msg.group_header) f |= kGroupHeaderFlag;
    if (msg.payload_header) f |= kPayloadHeaderFlag;
    if (msg.extended_header) f |= kExtendedHeaderFlag;
    return f;
}

NetworkMessage make_experiment_message(std::uint64_t publisher_id, std::uint16_t writer_id,
                                       std::uint16_t sequence_number, std::int64_t timestamp_ns,
                                       std::span<const std::int64_t> values) {
    NetworkMessage msg;
    msg.publisher_id = publisher_id;
    msg.dataset_class = 1;
    msg.group_header = GroupHeader{1, sequence_number};
    msg.payload_header = PayloadHeader{{writer_id}};
    msg.extended_header = ExtendedHeader{timestamp_ns};
    msg.payload.reserve(values.size());
    for (auto v : values) msg.payload.push_back({kInt64TypeTag, v});
    msg.flags = flags_for(msg);
    return msg;
}

std::size_t encoded_size(const NetworkMessage& msg) {
    std::size_t n = kMessageHeaderBytes;
    if (msg.group_header) n += 4;
    if (msg.payload_header) n += 1 + 2 * msg.payload_header->writer_ids.size();
    if (msg.extended_header) n += 8;
    n += kReservedBytes;
    n += kFieldBytes * msg.payload.size();
    return n;
}

std::vector<std::uint8_t> encode_network_message(const NetworkMessage& msg) {
    if (msg.flags != flags_for(msg)) {
        throw CodecError(CodecError::Kind::FlagMismatch, "uadp: flags do not match the present headers");
    }
    if (msg.payload_header && msg.payload_header->writer_ids.size() > 0xff) {
        throw CodecError(CodecError::Kind::LengthMismatch, "uadp: too many writer ids");
    }
    const std::size_t size = encoded_size(msg);
    if (size + kLinkOverheadBytes > kMaxLinkFrameBytes) {
        throw CodecError(CodecError::Kind::Oversize,
                         "uadp: message of " + std::to_string(size) + " bytes exceeds the " +
                             std::to_string(kMaxLinkFrameBytes) + "-byte link frame");
    }

    Writer w(size);
    w.u8(msg.protocol_version);
    w.u8(msg.flags);
    w.u64(msg.publisher_id);
    w.u8(msg.dataset_class);
    if (msg.group_header) {
        w.u16(msg.group_header->message_number);
        w.u16(msg.group_header->sequence_number);
    }
    if (msg.payload_header) {
        w.u8(static_cast<std::uint8_t>(msg.payload_header->writer_ids.size()));
        for (auto id : msg.payload_header->writer_ids) w.u16(id);
    }
    if (msg.extended_header) w.u64(static_cast<std::uint64_t>(msg.extended_header->timestamp_ns));
    w.zeros(kReservedBytes);
    for (const auto& field : msg.payload) {
        w.u8(field.type_tag);
        w.u64(static_cast<std::uint64_t>(field.value));
    }
    return w.take();
}

NetworkMessage decode_network_message(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    NetworkMessage msg;
    msg.protocol_version = r.u8();
    if (msg.protocol_version != kProtocolVersion) {
        throw CodecError(CodecError::Kind::UnknownVersion,
                         "uadp: unknown protocol version " + std::to_string(msg.protocol_version));
    }
    msg.flags = r.u8();
    if ((msg.flags & ~kKnownFlags) != 0) {
        throw CodecError(CodecError::Kind::FlagMismatch, "uadp: unsupported flag bits set");
    }
    msg.publisher_id = r.u64();
    msg.dataset_class = r.u8();
    if (msg.flags & kGroupHeaderFlag) {
        GroupHeader g;
        g.message_number = r.u16();
        g.sequence_number = r.u16();
        msg.group_header = g;
    }
    if (msg.flags & kPayloadHeaderFlag) {
        PayloadHeader p;
        const auto count = r.u8();
        p.writer_ids.reserve(count);
        for (int i = 0; i < count; ++i) p.writer_ids.push_back(r.u16());
        msg.payload_header = std::move(p);
    }
    if (msg.flags & kExtendedHeaderFlag) {
        msg.extended_header = ExtendedHeader{static_cast<std::int64_t>(r.u64())};
    }
    r.skip(kReservedBytes);

    if (r.remaining() % kFieldBytes != 0) {
        throw CodecError(CodecError::Kind::LengthMismatch,
                         "uadp: " + std::to_string(r.remaining()) + " payload bytes is not a whole number of fields");
    }
    const std::size_t n = r.remaining() / kFieldBytes;
    msg.payload.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        DataSetField f;
        f.type_tag = r.u8();
        f.value = static_cast<std::int64_t>(r.u64());
        msg.payload.push_back(f);
    }
    return msg;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        s.push_back(kDigits[b >> 4]);
        s.push_back(kDigits[b & 0xf]);
    }
    return s;
}

std::vector<std::uint8_t> from_hex(std::string_view text) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        return -1;
    };
    std::vector<std::uint8_t> out;
    int high = -1;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        const int v = nibble(c);
        if (v < 0) throw std::invalid_argument("hex: invalid digit");
        if (high < 0) {
            high = v;
        } else {
            out.push_back(static_cast<std::uint8_t>(high << 4 | v));
            high = -1;
        }
    }
    if (high >= 0) throw std::invalid_argument("hex: odd number of digits");
    return out;
}

} // namespace tsnlab::uadp
