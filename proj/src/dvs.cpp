#include "dvslab/dvs.hpp"

namespace dvslab {

void Params::serialize(ByteWriter& w) const {
    w.put_u64(group.p);
    w.put_u64(group.q);
    w.put_u64(group.g);
    w.put_u32(group.kappa);
    w.put_str(group.hash_name);
    w.put_str(scheme_label);
    w.put_u32(kappa);
}

Params Params::deserialize(ByteReader& r) {
    Params p;
    p.group.p = r.get_u64();
    p.group.q = r.get_u64();
    p.group.g = r.get_u64();
    p.group.kappa = r.get_u32();
    p.group.hash_name = r.get_str();
    p.scheme_label = r.get_str();
    p.kappa = r.get_u32();
    return p;
}

Bytes Signature::encode() const {
    Bytes out = tag.bytes;
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
}

void Signature::serialize(ByteWriter& w) const {
    w.put_bytes(tag.bytes);
    w.put_bytes(extra);
}

Signature Signature::deserialize(ByteReader& r) {
    Signature s;
    s.tag.bytes = r.get_bytes();
    s.extra = r.get_bytes();
    return s;
}

std::string_view bottom_reason_name(BottomReason r) {
    switch (r) {
        case BottomReason::invalid_key: return "invalid_key";
        case BottomReason::invalid_party: return "invalid_party";
        case BottomReason::restricted_query: return "restricted_query";
    }
    return "?";
}

}  // namespace dvslab
