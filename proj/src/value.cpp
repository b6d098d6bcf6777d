#include "acl/value.hpp"

#include <cstdio>
#include <sstream>

#include "acl/errors.hpp"

namespace acl {

Carrier Carrier::ordinal(int n) {
  Carrier c{n, std::vector<std::uint8_t>(static_cast<std::size_t>(n) * n, 0)};
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) c.order[a * n + b] = 1;
  return c;
}

bool Carrier::is_total() const {
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b)
      if (!le(a, b) && !le(b, a)) return false;
  return true;
}

Object::Object(Zigzag z)
    : payload_(std::make_shared<const Zigzag>(std::move(z))) {}

const Carrier& Object::carrier() const {
  if (!is_carrier()) throw ValidationError("object is not a finite carrier");
  return std::get<0>(payload_);
}

const Label& Object::label() const {
  if (!is_label()) throw ValidationError("object is not a label");
  return std::get<1>(payload_);
}

const Zigzag& Object::zigzag() const {
  if (!is_zigzag()) throw ValidationError("object is not a zigzag");
  return *std::get<2>(payload_);
}

bool operator==(const Object& a, const Object& b) {
  if (a.payload_.index() != b.payload_.index()) return false;
  if (a.is_zigzag()) {
    const auto& pa = std::get<2>(a.payload_);
    const auto& pb = std::get<2>(b.payload_);
    return pa == pb || *pa == *pb;
  }
  return a.payload_ == b.payload_;
}

Morphism Morphism::function(Object source, Object target,
                            std::vector<int> images) {
  Morphism m;
  m.source_ = std::move(source);
  m.target_ = std::move(target);
  m.data_ = std::move(images);
  return m;
}

Morphism Morphism::arrow(Object source, Object target) {
  Morphism m;
  m.source_ = std::move(source);
  m.target_ = std::move(target);
  m.data_ = std::monostate{};
  return m;
}

Morphism Morphism::zigzag_map(Object source, Object target,
                              ZigzagMapData data) {
  Morphism m;
  m.source_ = std::move(source);
  m.target_ = std::move(target);
  m.data_ = std::make_shared<const ZigzagMapData>(std::move(data));
  return m;
}

const std::vector<int>& Morphism::images() const {
  if (!is_function()) throw ValidationError("morphism is not a function");
  return std::get<0>(data_);
}

const ZigzagMapData& Morphism::zigzag_map() const {
  if (!is_zigzag_map()) throw ValidationError("morphism is not a zigzag map");
  return *std::get<2>(data_);
}

bool operator==(const Morphism& a, const Morphism& b) {
  if (a.data_.index() != b.data_.index()) return false;
  if (!(a.source_ == b.source_) || !(a.target_ == b.target_)) return false;
  if (a.is_zigzag_map()) {
    const auto& pa = std::get<2>(a.data_);
    const auto& pb = std::get<2>(b.data_);
    return pa == pb || *pa == *pb;
  }
  return a.data_ == b.data_;
}

namespace {

void write_ints(std::ostringstream& os, const std::vector<int>& v) {
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
}

void write_object(std::ostringstream& os, const Object& o);

void write_morphism(std::ostringstream& os, const Morphism& f) {
  if (f.is_function()) {
    write_ints(os, f.images());
  } else if (f.is_arrow()) {
    os << '>';
  } else {
    const auto& d = f.zigzag_map();
    os << "m";
    write_ints(os, d.singular);
    os << '(';
    for (std::size_t i = 0; i < d.singular_slices.size(); ++i) {
      if (i) os << ',';
      write_morphism(os, d.singular_slices[i]);
    }
    os << ";";
    for (std::size_t i = 0; i < d.regular_slices.size(); ++i) {
      if (i) os << ',';
      write_morphism(os, d.regular_slices[i]);
    }
    os << ')';
  }
}

void write_object(std::ostringstream& os, const Object& o) {
  if (o.is_carrier()) {
    const auto& c = o.carrier();
    os << 'C' << c.size;
    if (!c.order.empty()) {
      os << '<';
      for (auto b : c.order) os << static_cast<int>(b);
      os << '>';
    }
  } else if (o.is_label()) {
    os << o.label().name << '@' << o.label().dim;
  } else {
    const auto& z = o.zigzag();
    os << "Z(";
    for (int i = 0; i <= z.length(); ++i) {
      write_object(os, z.regular[i]);
      if (i < z.length()) {
        os << '|';
        write_morphism(os, z.forward[i]);
        os << '|';
        write_object(os, z.singular[i]);
        os << '|';
        write_morphism(os, z.backward[i]);
        os << '|';
      }
    }
    os << ')';
  }
}

}  // namespace

std::string canonical(const Object& o) {
  std::ostringstream os;
  write_object(os, o);
  return os.str();
}

std::string canonical(const Morphism& f) {
  std::ostringstream os;
  write_object(os, f.source());
  os << "->";
  write_object(os, f.target());
  os << ':';
  write_morphism(os, f);
  return os.str();
}

std::string content_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace acl
