/*!
  \file relation.hpp
  \brief Value-generic relations over finite domains

  A relation is a set of tuples over a named schema. Truth tables are
  relations whose input attributes determine a single output attribute.
  Values are stored as indices into the attribute's domain, so the
  declared value order is the canonical order everywhere.
*/

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace decomp
{

using tuple_id = std::uint32_t;
using attr_set = std::vector<std::string>;

/*! \brief Value index of the don't-care marker `-`. */
inline constexpr int dont_care = -1;

/*! \brief Raised on malformed input or violated preconditions. */
class decomp_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief Raised when two independent computations of the same fact disagree. */
class consistency_error : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

struct domain
{
  std::string name;
  std::vector<std::string> values;

  int index_of( std::string_view v ) const
  {
    for ( auto i = 0u; i < values.size(); ++i )
    {
      if ( values[i] == v )
        return static_cast<int>( i );
    }
    return -2;
  }

  std::size_t size() const { return values.size(); }

  void validate() const
  {
    if ( values.size() < 2u )
      throw decomp_error( "domain of '" + name + "' needs at least two values" );
    std::set<std::string> seen( values.begin(), values.end() );
    if ( seen.size() != values.size() )
      throw decomp_error( "domain of '" + name + "' has repeated values" );
    if ( seen.count( "-" ) )
      throw decomp_error( "'-' is reserved for don't-care" );
  }

  bool same_values( domain const& other ) const { return values == other.values; }
};

inline domain binary_domain( std::string name )
{
  return domain{ std::move( name ), { "0", "1" } };
}

enum class attr_role
{
  input,
  output,
  bridge
};

struct attribute
{
  domain dom;
  attr_role role{ attr_role::input };

  std::string const& name() const { return dom.name; }
};

struct tuple
{
  std::vector<int> values;
  tuple_id id{ 0 };
  /*! \brief Ids of the tuples this one was derived from (itself for base tuples). */
  std::vector<tuple_id> sources;
};

/*! \brief A set of tuples over an ordered schema.

  Tuples keep the order in which they were added; operations in this
  header emit them ordered by id. Identical value vectors are rejected
  (set semantics) and ids must be unique.
*/
class relation
{
public:
  relation() = default;

  explicit relation( std::vector<attribute> schema )
      : schema_( std::move( schema ) )
  {
    std::set<std::string> names;
    for ( auto const& a : schema_ )
    {
      if ( a.name().empty() )
        throw decomp_error( "attribute with empty name" );
      if ( !names.insert( a.name() ).second )
        throw decomp_error( "duplicate attribute '" + a.name() + "'" );
      a.dom.validate();
    }
  }

  std::vector<attribute> const& schema() const { return schema_; }
  std::vector<tuple> const& tuples() const { return tuples_; }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }
  std::size_t arity() const { return schema_.size(); }

  bool has_attr( std::string_view name ) const
  {
    return std::any_of( schema_.begin(), schema_.end(), [&]( auto const& a ) { return a.name() == name; } );
  }

  std::size_t attr_index( std::string_view name ) const
  {
    for ( auto i = 0u; i < schema_.size(); ++i )
    {
      if ( schema_[i].name() == name )
        return i;
    }
    throw decomp_error( "unknown attribute '" + std::string( name ) + "'" );
  }

  std::vector<std::size_t> attr_indices( attr_set const& names ) const
  {
    std::vector<std::size_t> idx;
    idx.reserve( names.size() );
    for ( auto const& n : names )
      idx.push_back( attr_index( n ) );
    return idx;
  }

  attribute const& attr( std::string_view name ) const { return schema_[attr_index( name )]; }

  attr_set names_with_role( attr_role role ) const
  {
    attr_set out;
    for ( auto const& a : schema_ )
    {
      if ( a.role == role )
        out.push_back( a.name() );
    }
    return out;
  }

  attr_set inputs() const { return names_with_role( attr_role::input ); }
  attr_set outputs() const { return names_with_role( attr_role::output ); }

  attr_set names() const
  {
    attr_set out;
    for ( auto const& a : schema_ )
      out.push_back( a.name() );
    return out;
  }

  void add_tuple( std::vector<int> values, tuple_id id ) { add_tuple( std::move( values ), id, { id } ); }

  void add_tuple( std::vector<int> values, tuple_id id, std::vector<tuple_id> sources )
  {
    if ( values.size() != schema_.size() )
      throw decomp_error( "tuple width " + std::to_string( values.size() ) + " does not match schema width " +
                          std::to_string( schema_.size() ) );
    for ( auto i = 0u; i < values.size(); ++i )
    {
      auto const v = values[i];
      if ( v == dont_care )
      {
        if ( schema_[i].role != attr_role::output )
          throw decomp_error( "don't-care in non-output attribute '" + schema_[i].name() + "'" );
        continue;
      }
      if ( v < 0 || static_cast<std::size_t>( v ) >= schema_[i].dom.size() )
        throw decomp_error( "value out of domain for attribute '" + schema_[i].name() + "'" );
    }
    if ( !ids_.insert( id ).second )
      throw decomp_error( "duplicate tuple id t" + std::to_string( id ) );
    if ( !rows_.insert( values ).second )
    {
      ids_.erase( id );
      throw decomp_error( "duplicate tuple t" + std::to_string( id ) );
    }
    tuples_.push_back( tuple{ std::move( values ), id, std::move( sources ) } );
  }

  bool contains( std::vector<int> const& values ) const { return rows_.count( values ) != 0u; }

  std::vector<tuple_id> ids() const { return { ids_.begin(), ids_.end() }; }

  tuple const& by_id( tuple_id id ) const
  {
    for ( auto const& t : tuples_ )
    {
      if ( t.id == id )
        return t;
    }
    throw decomp_error( "no tuple t" + std::to_string( id ) );
  }

  std::string value_string( std::size_t attr, int v ) const
  {
    return v == dont_care ? std::string( "-" ) : schema_[attr].dom.values[static_cast<std::size_t>( v )];
  }

  bool has_dont_care() const
  {
    return std::any_of( tuples_.begin(), tuples_.end(), []( auto const& t ) {
      return std::find( t.values.begin(), t.values.end(), dont_care ) != t.values.end();
    } );
  }

  /*! \brief No two tuples share the same vector of input-attribute values. */
  bool is_truth_table() const
  {
    auto const in = attr_indices( inputs() );
    std::set<std::vector<int>> seen;
    for ( auto const& t : tuples_ )
    {
      if ( !seen.insert( restrict( t, in ) ).second )
        return false;
    }
    return true;
  }

  /*! \brief Every combination of input values occurs. */
  bool is_complete() const
  {
    std::size_t space = 1u;
    for ( auto const& a : schema_ )
    {
      if ( a.role == attr_role::input )
        space *= a.dom.size();
    }
    return is_truth_table() && tuples_.size() == space;
  }

  static std::vector<int> restrict( tuple const& t, std::vector<std::size_t> const& idx )
  {
    std::vector<int> out;
    out.reserve( idx.size() );
    for ( auto i : idx )
      out.push_back( t.values[i] );
    return out;
  }

private:
  std::vector<attribute> schema_;
  std::vector<tuple> tuples_;
  std::set<tuple_id> ids_;
  std::set<std::vector<int>> rows_;
};

/*! \brief An attribute-to-value condition, values given by name. */
using assignment = std::vector<std::pair<std::string, std::string>>;

namespace detail
{

inline std::vector<tuple_id> merge_sources( std::vector<tuple_id> a, std::vector<tuple_id> const& b )
{
  a.insert( a.end(), b.begin(), b.end() );
  std::sort( a.begin(), a.end() );
  a.erase( std::unique( a.begin(), a.end() ), a.end() );
  return a;
}

inline std::vector<attribute> sub_schema( relation const& r, std::vector<std::size_t> const& idx )
{
  std::vector<attribute> out;
  for ( auto i : idx )
    out.push_back( r.schema()[i] );
  return out;
}

inline std::vector<std::pair<std::size_t, int>> resolve( relation const& r, assignment const& cond )
{
  std::vector<std::pair<std::size_t, int>> out;
  for ( auto const& [name, value] : cond )
  {
    auto const i = r.attr_index( name );
    auto const v = value == "-" ? dont_care : r.schema()[i].dom.index_of( value );
    if ( v == -2 )
      throw decomp_error( "value '" + value + "' not in domain of '" + name + "'" );
    out.emplace_back( i, v );
  }
  return out;
}

/* Groups restricted tuples; the group id is the smallest source id. */
inline relation group_by( relation const& r, std::vector<std::size_t> const& idx,
                          std::vector<tuple const*> const& selected )
{
  struct group
  {
    std::vector<tuple_id> sources;
    tuple_id first_id;
  };
  std::map<std::vector<int>, group> groups;
  for ( auto const* t : selected )
  {
    auto [it, fresh] = groups.try_emplace( relation::restrict( *t, idx ), group{ {}, t->id } );
    it->second.sources = merge_sources( std::move( it->second.sources ), t->sources );
    it->second.first_id = std::min( it->second.first_id, t->id );
  }
  auto const traced = std::all_of( groups.begin(), groups.end(), []( auto const& g ) { return !g.second.sources.empty(); } );
  std::vector<std::tuple<tuple_id, std::vector<int>, std::vector<tuple_id>>> rows;
  for ( auto& [values, g] : groups )
    rows.emplace_back( traced ? g.sources.front() : g.first_id, values, std::move( g.sources ) );
  std::sort( rows.begin(), rows.end(), []( auto const& a, auto const& b ) { return std::get<0>( a ) < std::get<0>( b ); } );

  relation out( sub_schema( r, idx ) );
  for ( auto& [id, values, src] : rows )
    out.add_tuple( values, id, src );
  return out;
}

} // namespace detail

/*! \brief Projection R[X]: distinct restrictions of the tuples to `attrs`.

  The schema follows the order of `attrs`. Each output tuple carries the
  ids of every tuple it came from and takes the smallest of them as id.
  If some output tuple has no recorded source (a spurious join result),
  every output tuple takes the smallest id of its own members instead.
*/
inline relation project( relation const& r, attr_set const& attrs )
{
  auto const idx = r.attr_indices( attrs );
  if ( std::set<std::size_t>( idx.begin(), idx.end() ).size() != idx.size() )
    throw decomp_error( "projection lists an attribute twice" );
  std::vector<tuple const*> all;
  for ( auto const& t : r.tuples() )
    all.push_back( &t );
  return detail::group_by( r, idx, all );
}

/*! \brief Keeps the tuples matching every attribute-value pair of `cond`; ids are preserved. */
inline relation select( relation const& r, assignment const& cond )
{
  auto const c = detail::resolve( r, cond );
  relation out( r.schema() );
  for ( auto const& t : r.tuples() )
  {
    if ( std::all_of( c.begin(), c.end(), [&]( auto const& p ) { return t.values[p.first] == p.second; } ) )
      out.add_tuple( t.values, t.id, t.sources );
  }
  return out;
}

/*! \brief Conditional projection R_y[X]. */
inline relation cond_project( relation const& r, attr_set const& attrs, assignment const& cond )
{
  auto const c = detail::resolve( r, cond );
  auto const idx = r.attr_indices( attrs );
  std::vector<tuple const*> matching;
  for ( auto const& t : r.tuples() )
  {
    bool ok = true;
    for ( auto const& [i, v] : c )
      ok = ok && t.values[i] == v;
    if ( ok )
      matching.push_back( &t );
  }
  return detail::group_by( r, idx, matching );
}

/*! \brief Natural join S ⋈ T.

  The output schema is S's schema followed by T's remaining attributes.
  Shared attributes must have identical domains. Without shared
  attributes the result is the Cartesian product. Output tuples are
  numbered consecutively; their sources are the intersection of the two
  operands' sources, so a joined tuple built from projections of one
  relation traces back to the original tuple it reproduces (and to none
  if it is spurious).
*/
inline relation natural_join( relation const& s, relation const& t )
{
  std::vector<std::pair<std::size_t, std::size_t>> shared;
  std::vector<std::size_t> rest;
  for ( auto j = 0u; j < t.arity(); ++j )
  {
    auto const& a = t.schema()[j];
    if ( s.has_attr( a.name() ) )
    {
      auto const i = s.attr_index( a.name() );
      if ( !s.schema()[i].dom.same_values( a.dom ) )
        throw decomp_error( "join attribute '" + a.name() + "' has mismatched domains" );
      shared.emplace_back( i, j );
    }
    else
    {
      rest.push_back( j );
    }
  }

  auto schema = s.schema();
  for ( auto j : rest )
    schema.push_back( t.schema()[j] );
  relation out( std::move( schema ) );

  std::map<std::vector<int>, std::vector<tuple const*>> index;
  for ( auto const& tt : t.tuples() )
  {
    std::vector<int> key;
    for ( auto [i, j] : shared )
      key.push_back( tt.values[j] );
    index[key].push_back( &tt );
  }

  tuple_id next = 0;
  for ( auto const& st : s.tuples() )
  {
    std::vector<int> key;
    for ( auto [i, j] : shared )
      key.push_back( st.values[i] );
    auto it = index.find( key );
    if ( it == index.end() )
      continue;
    for ( auto const* tt : it->second )
    {
      auto values = st.values;
      for ( auto j : rest )
        values.push_back( tt->values[j] );
      std::vector<tuple_id> common;
      std::set_intersection( st.sources.begin(), st.sources.end(), tt->sources.begin(), tt->sources.end(),
                             std::back_inserter( common ) );
      out.add_tuple( std::move( values ), next++, std::move( common ) );
    }
  }
  return out;
}

/*! \brief Same attribute/domain pairs and same tuple set, ignoring attribute order and tuple ids. */
inline bool relations_equal( relation const& a, relation const& b )
{
  if ( a.arity() != b.arity() || a.size() != b.size() )
    return false;
  std::vector<std::size_t> perm;
  for ( auto const& attr : a.schema() )
  {
    if ( !b.has_attr( attr.name() ) )
      return false;
    auto const j = b.attr_index( attr.name() );
    if ( !b.schema()[j].dom.same_values( attr.dom ) )
      return false;
    perm.push_back( j );
  }
  std::set<std::vector<int>> rows_b;
  for ( auto const& t : b.tuples() )
    rows_b.insert( relation::restrict( t, perm ) );
  for ( auto const& t : a.tuples() )
  {
    if ( !rows_b.count( t.values ) )
      return false;
  }
  return true;
}

} // namespace decomp
