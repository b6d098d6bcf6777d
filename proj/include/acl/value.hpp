#pragma once

// Objects and morphisms shared by every category instance.
//
// One recursive value type covers all categories so that the zigzag
// construction can be iterated to any depth at runtime: a finite carrier
// (FinSet/FinPre/FinPos/FinOrd), a label of the signature, or a zigzag over
// some lower category. Values are immutable; zigzag payloads are shared.

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace acl {

/// A finite set {0..size-1}, optionally with an order relation
/// `order[a * size + b]` (empty for plain sets).
struct Carrier {
  int size = 0;
  std::vector<std::uint8_t> order;

  bool ordered() const { return !order.empty() || size == 0; }
  bool le(int a, int b) const { return order[a * size + b] != 0; }

  static Carrier set(int n) { return {n, {}}; }
  /// The ordinal ord n = {0 < 1 < ... < n-1}.
  static Carrier ordinal(int n);
  /// Total order check (ordered carriers only).
  bool is_total() const;

  friend bool operator==(const Carrier&, const Carrier&) = default;
};

/// A generator of the signature with its dimension.
struct Label {
  std::string name;
  int dim = 0;

  friend bool operator==(const Label&, const Label&) = default;
};

struct Zigzag;
struct ZigzagMapData;

class Object {
 public:
  Object() : payload_(Carrier{}) {}
  Object(Carrier c) : payload_(std::move(c)) {}
  Object(Label l) : payload_(std::move(l)) {}
  Object(Zigzag z);

  bool is_carrier() const { return payload_.index() == 0; }
  bool is_label() const { return payload_.index() == 1; }
  bool is_zigzag() const { return payload_.index() == 2; }

  const Carrier& carrier() const;
  const Label& label() const;
  const Zigzag& zigzag() const;

  friend bool operator==(const Object& a, const Object& b);

 private:
  std::variant<Carrier, Label, std::shared_ptr<const Zigzag>> payload_;
};

class Morphism {
 public:
  Morphism() = default;

  /// A total function given by images of 0..n-1.
  static Morphism function(Object source, Object target,
                           std::vector<int> images);
  /// The unique arrow of a thin category.
  static Morphism arrow(Object source, Object target);
  static Morphism zigzag_map(Object source, Object target, ZigzagMapData data);

  const Object& source() const { return source_; }
  const Object& target() const { return target_; }

  bool is_function() const { return data_.index() == 0; }
  bool is_arrow() const { return data_.index() == 1; }
  bool is_zigzag_map() const { return data_.index() == 2; }

  const std::vector<int>& images() const;
  int operator()(int x) const { return images().at(x); }
  const ZigzagMapData& zigzag_map() const;

  friend bool operator==(const Morphism& a, const Morphism& b);

 private:
  Object source_;
  Object target_;
  std::variant<std::vector<int>, std::monostate,
               std::shared_ptr<const ZigzagMapData>>
      data_;
};

/// X(r0) -> X(s0) <- X(r1) -> ... <- X(rn).
struct Zigzag {
  std::vector<Object> regular;   // n + 1 objects
  std::vector<Object> singular;  // n objects
  std::vector<Morphism> forward;   // X(r i) -> X(s i)
  std::vector<Morphism> backward;  // X(r i+1) -> X(s i)

  int length() const { return static_cast<int>(singular.size()); }

  friend bool operator==(const Zigzag&, const Zigzag&) = default;
};

/// Data of a zigzag map f : X -> Y with |X| = n, |Y| = m.
struct ZigzagMapData {
  std::vector<int> singular;               // f_s : ord n -> ord m
  std::vector<Morphism> singular_slices;   // X(s i) -> Y(s f_s(i))
  std::vector<Morphism> regular_slices;    // X(r f_r(j)) -> Y(r j), j <= m
  /// f(r j, s i) for i < m and j in f_r([i, i+1]), indexed by
  /// j - f_r(i). Filled in by validation; ignored by equality.
  std::vector<std::vector<Morphism>> diagonals;

  friend bool operator==(const ZigzagMapData& a, const ZigzagMapData& b) {
    return a.singular == b.singular && a.singular_slices == b.singular_slices &&
           a.regular_slices == b.regular_slices;
  }
};

/// Stable textual serialisation used for ordering, deduplication and hashes.
std::string canonical(const Object& o);
std::string canonical(const Morphism& f);
/// 64-bit FNV-1a of `text`, as 16 hex digits.
std::string content_hash(const std::string& text);

}  // namespace acl
