//! Exact computational group theory for bicyclic 2-groups and the regular
//! embeddings of complete bipartite graphs `K_{n,n}` they classify.
//!
//! The objects of interest are *isobicyclic* groups: groups `G = ⟨a⟩⟨b⟩` that
//! factor as a product of two cyclic subgroups of the same 2-power order `n`
//! with trivial intersection, carrying an automorphism that swaps `a` and `b`.
//! For each `n = 2^e` these fall into a metacyclic family `G1(e, f)` and a
//! non-metacyclic family `G2(e; k, l)`, and the triples `(G, a, b)` are in
//! bijection with the regular embeddings of `K_{n,n}` into orientable
//! surfaces.
//!
//! Everything here is computed two ways wherever possible: closed-form
//! normal-form arithmetic on the one hand, and brute-force searches over
//! explicit multiplication tables or coset enumerations on the other. The
//! test suites assert that the two routes agree.
//!
//! Module map:
//!
//! - [`cayley`] — explicit finite groups as multiplication tables: closures,
//!   characteristic subgroups, quotients, homomorphism extension and
//!   isomorphism search. Every other module checks itself against this one.
//! - [`families`] — the parametrised families `G1(e, f)` and `G2(e; k, l)`
//!   as exact normal-form arithmetic on exponent pairs.
//! - [`classify`] — invariants `(d, u, v, s, t)` of an isobicyclic triple,
//!   the isomorphism calculus between family parameters, and recovery of the
//!   defining parameters from a bare multiplication table.
//! - [`presentations`] — a small presentation language, deterministic
//!   Todd–Coxeter coset enumeration, and certified equivalence with the
//!   Berkovich–Janko presentations.
//! - [`factorise`] — exhaustive search for groups of order `n^2` that factor
//!   as a product of two cyclic groups of order `n`, via matched-pair data.
//! - [`maps`] — regular embeddings of `K_{n,n}` as rotation systems on darts,
//!   map equivalence and enumeration up to isomorphism.
//! - [`report`] — structured pass/fail reports shared by the CLI and the
//!   verification suites.
//! - [`suites`] — the named verification suites exposed by `isoclass verify`.
//!
//! The `isoclass` binary is a thin front-end over these modules; the
//! `examples/` directory contains one runnable walkthrough per capability.

pub mod cayley;
pub mod classify;
pub mod factorise;
pub mod families;
pub mod maps;
pub mod presentations;
pub mod report;
pub mod suites;
