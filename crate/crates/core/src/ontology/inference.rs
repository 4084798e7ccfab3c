use std::collections::{HashMap, HashSet, VecDeque};

use super::schema::{Relation, UtoSchema};
use crate::store::{Graph, Iri, Term, Triple};

/// Least fixpoint of the UTO rules over `g`.
///
/// - inverses: `r(x, y)` gives `r⁻(y, x)` for every relation with a declared
///   inverse, in both directions, when `y` is an IRI;
/// - `hasRelatedTag` is symmetric and transitive;
/// - hub projection: `hasObject(t, o)` with `hasTag`, `hasComment` or
///   `hasVote` on `t` copies that edge onto `o`.
///
/// Evaluated semi-naively: each new triple is joined only against triples
/// already processed.
pub fn infer_closure(g: &Graph, schema: &UtoSchema) -> Graph {
    let mut state = Closure::new(schema);
    state.graph = g.clone();
    state.queue.extend(g.iter().cloned());
    while let Some(t) = state.queue.pop_front() {
        state.process(t);
    }
    state.graph
}

struct Closure<'s> {
    schema: &'s UtoSchema,
    graph: Graph,
    queue: VecDeque<Triple>,
    related_out: HashMap<Iri, HashSet<Iri>>,
    related_in: HashMap<Iri, HashSet<Iri>>,
    objects_of: HashMap<Iri, Vec<Iri>>,
    hub_edges: HashMap<Iri, Vec<(Relation, Term)>>,
}

impl<'s> Closure<'s> {
    fn new(schema: &'s UtoSchema) -> Self {
        Closure {
            schema,
            graph: Graph::new(),
            queue: VecDeque::new(),
            related_out: HashMap::new(),
            related_in: HashMap::new(),
            objects_of: HashMap::new(),
            hub_edges: HashMap::new(),
        }
    }

    fn derive(&mut self, subject: Iri, relation: Relation, object: Term) {
        let t = Triple::new(subject, self.schema.relation_iri(relation), object);
        if self.graph.insert(t.clone()) {
            self.queue.push_back(t);
        }
    }

    fn process(&mut self, t: Triple) {
        let Some(rel) = self.schema.relation_for_iri(t.predicate.as_str()) else {
            return;
        };
        let def = self.schema.relation(rel);
        let object_iri = t.object.as_iri().cloned();

        if let (Some(inv), Some(o)) = (rel.inverse(), &object_iri) {
            self.derive(o.clone(), inv, Term::Iri(t.subject.clone()));
        }

        if rel == Relation::HasRelatedTag {
            if let Some(b) = object_iri.clone() {
                let a = t.subject.clone();
                self.related_out.entry(a.clone()).or_default().insert(b.clone());
                self.related_in.entry(b.clone()).or_default().insert(a.clone());
                if def.symmetric {
                    self.derive(b.clone(), rel, Term::Iri(a.clone()));
                }
                if def.transitive {
                    // a→b joined with b→c, and z→a joined with a→b
                    let forward: Vec<Iri> = self.related_out.get(&b).into_iter().flatten().cloned().collect();
                    for c in forward {
                        self.derive(a.clone(), rel, Term::Iri(c));
                    }
                    let backward: Vec<Iri> = self.related_in.get(&a).into_iter().flatten().cloned().collect();
                    for z in backward {
                        self.derive(z, rel, Term::Iri(b.clone()));
                    }
                }
            }
        }

        if rel == Relation::HasObject {
            if let Some(o) = object_iri {
                self.objects_of.entry(t.subject.clone()).or_default().push(o.clone());
                let edges = self.hub_edges.get(&t.subject).cloned().unwrap_or_default();
                for (r, x) in edges {
                    self.derive(o.clone(), r, x);
                }
            }
        } else if def.hub_projected {
            self.hub_edges
                .entry(t.subject.clone())
                .or_default()
                .push((rel, t.object.clone()));
            let objects = self.objects_of.get(&t.subject).cloned().unwrap_or_default();
            for o in objects {
                self.derive(o, rel, t.object.clone());
            }
        }
    }
}
