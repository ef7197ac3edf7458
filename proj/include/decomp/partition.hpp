/*!
  \file partition.hpp
  \brief Partitions of tuple-id sets and their lattice operations

  Partitions live over tuple ids rather than tuples, so the same object
  describes a relation before and after bridge attributes are added.
  Orientation: the all-singleton partition is the bottom, and
  `refines( a, b )` means a is finer than b.
*/

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "relation.hpp"

namespace decomp
{

class partition
{
public:
  using block = std::vector<tuple_id>;

  partition() = default;

  /*! \brief Builds a partition from disjoint nonempty blocks and brings it into canonical form.

    Labels, if given, are kept aligned with their blocks.
  */
  explicit partition( std::vector<block> blocks, std::vector<std::string> labels = {} )
  {
    if ( !labels.empty() && labels.size() != blocks.size() )
      throw decomp_error( "partition labels do not match blocks" );
    std::vector<std::size_t> order( blocks.size() );
    std::iota( order.begin(), order.end(), 0u );
    for ( auto& b : blocks )
    {
      if ( b.empty() )
        throw decomp_error( "partition block is empty" );
      std::sort( b.begin(), b.end() );
    }
    std::sort( order.begin(), order.end(), [&]( auto a, auto b ) { return blocks[a].front() < blocks[b].front(); } );
    for ( auto i : order )
    {
      blocks_.push_back( std::move( blocks[i] ) );
      if ( !labels.empty() )
        labels_.push_back( std::move( labels[i] ) );
    }

    for ( auto i = 0u; i < blocks_.size(); ++i )
    {
      for ( auto id : blocks_[i] )
        members_.emplace_back( id, i );
    }
    std::sort( members_.begin(), members_.end() );
    for ( auto i = 1u; i < members_.size(); ++i )
    {
      if ( members_[i - 1].first == members_[i].first )
        throw decomp_error( "partition blocks overlap at t" + std::to_string( members_[i].first ) );
    }
  }

  std::vector<block> const& blocks() const { return blocks_; }
  std::vector<std::string> const& labels() const { return labels_; }
  bool has_labels() const { return !labels_.empty(); }
  std::size_t size() const { return blocks_.size(); }
  block const& operator[]( std::size_t i ) const { return blocks_[i]; }

  std::vector<tuple_id> universe() const
  {
    std::vector<tuple_id> u;
    u.reserve( members_.size() );
    for ( auto const& m : members_ )
      u.push_back( m.first );
    return u;
  }

  std::size_t universe_size() const { return members_.size(); }

  std::size_t block_of( tuple_id id ) const
  {
    auto it = std::lower_bound( members_.begin(), members_.end(), std::make_pair( id, std::size_t{ 0 } ) );
    if ( it == members_.end() || it->first != id )
      throw decomp_error( "t" + std::to_string( id ) + " is not in the partition's universe" );
    return it->second;
  }

  bool same_universe( partition const& other ) const
  {
    if ( members_.size() != other.members_.size() )
      return false;
    for ( auto i = 0u; i < members_.size(); ++i )
    {
      if ( members_[i].first != other.members_[i].first )
        return false;
    }
    return true;
  }

  /*! \brief Equality of block structure; labels are ignored. */
  bool operator==( partition const& other ) const { return blocks_ == other.blocks_; }

  /*! \brief `{t0 t2 | t1 t3}` in canonical block order. */
  std::string to_string() const
  {
    std::string s = "{";
    for ( auto i = 0u; i < blocks_.size(); ++i )
    {
      if ( i )
        s += " | ";
      for ( auto j = 0u; j < blocks_[i].size(); ++j )
      {
        if ( j )
          s += " ";
        s += "t" + std::to_string( blocks_[i][j] );
      }
    }
    return s + "}";
  }

private:
  std::vector<block> blocks_;
  std::vector<std::string> labels_;
  std::vector<std::pair<tuple_id, std::size_t>> members_; /* sorted (id, block) */
};

inline partition top_partition( std::vector<tuple_id> universe )
{
  if ( universe.empty() )
    return partition{};
  return partition( { std::move( universe ) } );
}

inline partition bottom_partition( std::vector<tuple_id> const& universe )
{
  std::vector<partition::block> blocks;
  for ( auto id : universe )
    blocks.push_back( { id } );
  return partition( std::move( blocks ) );
}

/*! \brief Renders a value vector as a block label: `01` for single-character values, `lo,hi` otherwise. */
inline std::string render_label( relation const& r, std::vector<std::size_t> const& idx, std::vector<int> const& values )
{
  bool const short_values = std::all_of( idx.begin(), idx.end(), [&]( auto i ) {
    auto const& vs = r.schema()[i].dom.values;
    return std::all_of( vs.begin(), vs.end(), []( auto const& v ) { return v.size() == 1u; } );
  } );
  std::string s;
  for ( auto k = 0u; k < idx.size(); ++k )
  {
    if ( k && !short_values )
      s += ",";
    s += r.value_string( idx[k], values[k] );
  }
  return s;
}

/*! \brief π_X: tuples grouped by their X-value, each block labeled with that value.

  An empty attribute set gives the one-block (top) partition.
*/
inline partition induced_partition( relation const& r, attr_set const& attrs )
{
  auto const idx = r.attr_indices( attrs );
  std::map<std::vector<int>, partition::block> groups;
  for ( auto const& t : r.tuples() )
    groups[relation::restrict( t, idx )].push_back( t.id );
  std::vector<partition::block> blocks;
  std::vector<std::string> labels;
  for ( auto& [key, ids] : groups )
  {
    labels.push_back( render_label( r, idx, key ) );
    blocks.push_back( std::move( ids ) );
  }
  return partition( std::move( blocks ), std::move( labels ) );
}

namespace detail
{

inline void require_same_universe( partition const& a, partition const& b )
{
  if ( !a.same_universe( b ) )
    throw decomp_error( "partitions are over different universes" );
}

struct union_find
{
  std::vector<std::size_t> parent;

  explicit union_find( std::size_t n ) : parent( n ) { std::iota( parent.begin(), parent.end(), 0u ); }

  std::size_t find( std::size_t x )
  {
    while ( parent[x] != x )
    {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite( std::size_t a, std::size_t b )
  {
    a = find( a );
    b = find( b );
    if ( a != b )
      parent[std::max( a, b )] = std::min( a, b );
  }
};

} // namespace detail

/*! \brief Greatest lower bound: the nonempty pairwise intersections of blocks. */
inline partition meet( partition const& p1, partition const& p2 )
{
  detail::require_same_universe( p1, p2 );
  std::map<std::pair<std::size_t, std::size_t>, partition::block> cells;
  for ( auto id : p1.universe() )
    cells[{ p1.block_of( id ), p2.block_of( id ) }].push_back( id );
  std::vector<partition::block> blocks;
  for ( auto& [key, ids] : cells )
    blocks.push_back( std::move( ids ) );
  return partition( std::move( blocks ) );
}

/*! \brief Lowest upper bound: transitive closure of block co-membership in either partition. */
inline partition join_partition( partition const& p1, partition const& p2 )
{
  detail::require_same_universe( p1, p2 );
  auto const u = p1.universe();
  detail::union_find uf( u.size() );
  auto const pos = [&]( tuple_id id ) {
    return static_cast<std::size_t>( std::lower_bound( u.begin(), u.end(), id ) - u.begin() );
  };
  for ( auto const* p : { &p1, &p2 } )
  {
    for ( auto const& b : p->blocks() )
    {
      for ( auto id : b )
        uf.unite( pos( b.front() ), pos( id ) );
    }
  }
  std::map<std::size_t, partition::block> groups;
  for ( auto i = 0u; i < u.size(); ++i )
    groups[uf.find( i )].push_back( u[i] );
  std::vector<partition::block> blocks;
  for ( auto& [root, ids] : groups )
    blocks.push_back( std::move( ids ) );
  return partition( std::move( blocks ) );
}

/*! \brief π₁ ≤ π₂: every block of p1 lies inside a block of p2. */
inline bool refines( partition const& p1, partition const& p2 )
{
  detail::require_same_universe( p1, p2 );
  for ( auto const& b : p1.blocks() )
  {
    auto const target = p2.block_of( b.front() );
    for ( auto id : b )
    {
      if ( p2.block_of( id ) != target )
        return false;
    }
  }
  return true;
}

} // namespace decomp
