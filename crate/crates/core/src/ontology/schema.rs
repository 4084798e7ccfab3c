use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::store::Iri;
use crate::vocab;

/// The eight UTO classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Concept {
    Tagging,
    Tag,
    Tagger,
    Object,
    Source,
    Comment,
    Date,
    Vote,
}

impl Concept {
    pub const ALL: [Concept; 8] = [
        Concept::Tagging,
        Concept::Tag,
        Concept::Tagger,
        Concept::Object,
        Concept::Source,
        Concept::Comment,
        Concept::Date,
        Concept::Vote,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Concept::Tagging => "Tagging",
            Concept::Tag => "Tag",
            Concept::Tagger => "Tagger",
            Concept::Object => "Object",
            Concept::Source => "Source",
            Concept::Comment => "Comment",
            Concept::Date => "Date",
            Concept::Vote => "Vote",
        }
    }

    pub fn from_name(name: &str) -> Option<Concept> {
        Concept::ALL.into_iter().find(|c| c.name() == name)
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// UTO properties: the eight forward relations followed by the six
/// schema-internal inverses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    HasTag,
    HasRelatedTag,
    HasCreator,
    HasObject,
    HasDate,
    HasSource,
    HasComment,
    HasVote,
    IsTagOf,
    IsCreatorOf,
    IsObjectOf,
    IsSourceOf,
    IsCommentOf,
    IsVoteOf,
}

impl Relation {
    pub const FORWARD: [Relation; 8] = [
        Relation::HasTag,
        Relation::HasRelatedTag,
        Relation::HasCreator,
        Relation::HasObject,
        Relation::HasDate,
        Relation::HasSource,
        Relation::HasComment,
        Relation::HasVote,
    ];

    pub const ALL: [Relation; 14] = [
        Relation::HasTag,
        Relation::HasRelatedTag,
        Relation::HasCreator,
        Relation::HasObject,
        Relation::HasDate,
        Relation::HasSource,
        Relation::HasComment,
        Relation::HasVote,
        Relation::IsTagOf,
        Relation::IsCreatorOf,
        Relation::IsObjectOf,
        Relation::IsSourceOf,
        Relation::IsCommentOf,
        Relation::IsVoteOf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Relation::HasTag => "hasTag",
            Relation::HasRelatedTag => "hasRelatedTag",
            Relation::HasCreator => "hasCreator",
            Relation::HasObject => "hasObject",
            Relation::HasDate => "hasDate",
            Relation::HasSource => "hasSource",
            Relation::HasComment => "hasComment",
            Relation::HasVote => "hasVote",
            Relation::IsTagOf => "is_tag_of",
            Relation::IsCreatorOf => "is_creator_of",
            Relation::IsObjectOf => "is_object_of",
            Relation::IsSourceOf => "is_source_of",
            Relation::IsCommentOf => "is_comment_of",
            Relation::IsVoteOf => "is_vote_of",
        }
    }

    pub fn from_name(name: &str) -> Option<Relation> {
        Relation::ALL.into_iter().find(|r| r.name() == name)
    }

    /// Looks a relation up by its full IRI in the UTO namespace.
    pub fn from_iri(iri: &str) -> Option<Relation> {
        iri.strip_prefix(vocab::UTO).and_then(Relation::from_name)
    }

    /// Position in declaration order (forward relations first).
    pub fn declaration_index(self) -> usize {
        self as usize
    }

    pub fn is_forward(self) -> bool {
        self.declaration_index() < Relation::FORWARD.len()
    }

    pub fn inverse(self) -> Option<Relation> {
        use Relation::*;
        Some(match self {
            HasTag => IsTagOf,
            HasCreator => IsCreatorOf,
            HasObject => IsObjectOf,
            HasSource => IsSourceOf,
            HasComment => IsCommentOf,
            HasVote => IsVoteOf,
            IsTagOf => HasTag,
            IsCreatorOf => HasCreator,
            IsObjectOf => HasObject,
            IsSourceOf => HasSource,
            IsCommentOf => HasComment,
            IsVoteOf => HasVote,
            HasRelatedTag | HasDate => return None,
        })
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValueType {
    String,
    Integer,
    Date,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptDef {
    pub concept: Concept,
    pub synonyms: Vec<&'static str>,
    pub value_type: ValueType,
    pub description: &'static str,
}

impl ConceptDef {
    pub fn name(&self) -> &'static str {
        self.concept.name()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationDef {
    pub relation: Relation,
    pub domain: Concept,
    /// Further subject classes the relation is accepted on.
    pub extra_domains: Vec<Concept>,
    pub range: Concept,
    /// `Some(1)` for exactly-one relations.
    pub cardinality: Option<u32>,
    pub transitive: bool,
    pub symmetric: bool,
    pub inverse_name: Option<&'static str>,
    pub inverse_functional: bool,
    /// Whether the tagging-node edge is copied onto the tagged object.
    pub hub_projected: bool,
}

impl RelationDef {
    pub fn name(&self) -> &'static str {
        self.relation.name()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlignmentKind {
    /// The UTO term and the external term are equivalent.
    Equivalent,
    /// The UTO term is subsumed by the external term.
    SubOf,
    /// The UTO term subsumes the external term.
    SuperOf,
}

/// A concept or relation of the schema.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UtoTerm {
    Concept(Concept),
    Relation(Relation),
}

impl UtoTerm {
    pub fn name(self) -> &'static str {
        match self {
            UtoTerm::Concept(c) => c.name(),
            UtoTerm::Relation(r) => r.name(),
        }
    }
}

impl fmt::Display for UtoTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignmentEntry {
    pub uto_term: UtoTerm,
    pub external_iri: Iri,
    pub kind: AlignmentKind,
}

#[derive(Debug, Clone)]
pub struct UtoSchema {
    pub concepts: Vec<ConceptDef>,
    pub relations: Vec<RelationDef>,
    pub alignments: Vec<AlignmentEntry>,
    pub base_namespace: String,
    by_external: HashMap<String, usize>,
}

impl UtoSchema {
    pub fn concept(&self, c: Concept) -> &ConceptDef {
        &self.concepts[c as usize]
    }

    pub fn relation(&self, r: Relation) -> &RelationDef {
        &self.relations[r as usize]
    }

    pub fn forward_relations(&self) -> &[RelationDef] {
        &self.relations[..Relation::FORWARD.len()]
    }

    pub fn concept_iri(&self, c: Concept) -> Iri {
        Iri::new(vocab::term(&self.base_namespace, c.name())).expect("schema IRIs are valid")
    }

    pub fn relation_iri(&self, r: Relation) -> Iri {
        Iri::new(vocab::term(&self.base_namespace, r.name())).expect("schema IRIs are valid")
    }

    pub fn term_iri(&self, t: UtoTerm) -> Iri {
        match t {
            UtoTerm::Concept(c) => self.concept_iri(c),
            UtoTerm::Relation(r) => self.relation_iri(r),
        }
    }

    /// Resolves an IRI in the schema namespace to a concept or relation.
    pub fn own_term(&self, iri: &str) -> Option<UtoTerm> {
        let local = iri.strip_prefix(self.base_namespace.as_str())?;
        Concept::from_name(local)
            .map(UtoTerm::Concept)
            .or_else(|| Relation::from_name(local).map(UtoTerm::Relation))
    }

    pub fn relation_for_iri(&self, iri: &str) -> Option<Relation> {
        match self.own_term(iri)? {
            UtoTerm::Relation(r) => Some(r),
            UtoTerm::Concept(_) => None,
        }
    }

    /// The alignment entry for an external IRI, if one exists.
    pub fn alignment(&self, external: &str) -> Option<&AlignmentEntry> {
        self.by_external.get(external).map(|&i| &self.alignments[i])
    }

    pub fn alignments_of(&self, term: UtoTerm) -> impl Iterator<Item = &AlignmentEntry> {
        self.alignments.iter().filter(move |a| a.uto_term == term)
    }
}

fn concept_defs() -> Vec<ConceptDef> {
    use Concept::*;
    let def = |concept, synonyms: &[&'static str], value_type, description| ConceptDef {
        concept,
        synonyms: synonyms.to_vec(),
        value_type,
        description,
    };
    vec![
        def(Tagging, &[], ValueType::None, "Reification hub for one tagging event."),
        def(Tag, &["Keyword"], ValueType::String, "Label string applied during tagging."),
        def(Tagger, &["User"], ValueType::String, "Account id of whoever applied the tags."),
        def(
            Object,
            &["Online object", "Resource"],
            ValueType::String,
            "Tagged resource: bookmark, photo or video URL.",
        ),
        def(Source, &["Social network"], ValueType::String, "Site the tagging data was harvested from."),
        def(Comment, &["Note"], ValueType::String, "Free text attached during tagging."),
        def(Date, &["Time"], ValueType::Date, "Month of the tagging event, written `Mmm YY`."),
        def(Vote, &["Favourite"], ValueType::Integer, "Popularity count; its meaning depends on the site."),
    ]
}

fn relation_defs() -> Vec<RelationDef> {
    use Concept::*;
    use Relation::*;
    let fwd = |relation: Relation, domain, range, exactly_one: bool, transitive, symmetric| RelationDef {
        relation,
        domain,
        extra_domains: Vec::new(),
        range,
        cardinality: exactly_one.then_some(1),
        transitive,
        symmetric,
        inverse_name: relation.inverse().map(Relation::name),
        inverse_functional: relation == HasSource,
        hub_projected: matches!(relation, HasTag | HasComment | HasVote),
    };
    let mut defs = vec![
        RelationDef {
            extra_domains: vec![Object],
            ..fwd(HasTag, Tagging, Tag, false, true, false)
        },
        fwd(HasRelatedTag, Tag, Tag, false, true, true),
        fwd(HasCreator, Tagging, Tagger, true, true, false),
        fwd(HasObject, Tagging, Object, true, false, false),
        fwd(HasDate, Tagging, Date, true, true, false),
        fwd(HasSource, Object, Source, false, false, false),
        fwd(HasComment, Tagging, Comment, false, true, false),
        fwd(HasVote, Tagging, Vote, false, true, false),
    ];
    let inverses: Vec<RelationDef> = [IsTagOf, IsCreatorOf, IsObjectOf, IsSourceOf, IsCommentOf, IsVoteOf]
        .into_iter()
        .map(|inv| {
            let forward = &defs[inv.inverse().expect("inverse relations have a forward") as usize];
            let mut domains = vec![forward.domain];
            domains.extend(&forward.extra_domains);
            RelationDef {
                relation: inv,
                domain: forward.range,
                extra_domains: Vec::new(),
                range: domains[0],
                cardinality: None,
                transitive: false,
                symmetric: false,
                inverse_name: Some(forward.name()),
                inverse_functional: false,
                hub_projected: false,
            }
        })
        .collect();
    defs.extend(inverses);
    defs
}

fn alignment_entries() -> Vec<AlignmentEntry> {
    use AlignmentKind::*;
    let c = UtoTerm::Concept;
    let r = UtoTerm::Relation;
    let rows: [(UtoTerm, &str, &str, AlignmentKind); 23] = [
        (c(Concept::Tag), vocab::SKOS, "Concept", Equivalent),
        (c(Concept::Tagger), vocab::FOAF, "Person", Equivalent),
        (c(Concept::Tagger), vocab::SIOC, "User", Equivalent),
        (c(Concept::Tagger), vocab::FOAF, "Agent", SubOf),
        (c(Concept::Tagger), vocab::SIOC, "Usergroup", SubOf),
        (c(Concept::Object), vocab::FOAF, "Document", SuperOf),
        (c(Concept::Object), vocab::FOAF, "Image", SuperOf),
        (c(Concept::Object), vocab::SIOC, "Post", SuperOf),
        (c(Concept::Source), vocab::SIOC, "Community", SubOf),
        (r(Relation::HasRelatedTag), vocab::SIOC, "related_to", Equivalent),
        (r(Relation::HasRelatedTag), vocab::SKOS, "broader", Equivalent),
        (r(Relation::HasRelatedTag), vocab::SKOS, "narrower", Equivalent),
        (r(Relation::HasRelatedTag), vocab::SKOS, "related", Equivalent),
        (r(Relation::HasSource), vocab::SIOC, "host_of", Equivalent),
        (r(Relation::HasSource), vocab::DC, "source", Equivalent),
        (r(Relation::HasTag), vocab::DC, "description", Equivalent),
        (r(Relation::HasTag), vocab::FOAF, "depiction", Equivalent),
        (r(Relation::HasTag), vocab::FOAF, "topic", Equivalent),
        (r(Relation::HasCreator), vocab::DC, "creator", Equivalent),
        (r(Relation::HasCreator), vocab::FOAF, "maker", Equivalent),
        (r(Relation::HasCreator), vocab::SIOC, "has_creator", Equivalent),
        (r(Relation::HasComment), vocab::SIOC, "note", Equivalent),
        (r(Relation::HasDate), vocab::DC, "date", Equivalent),
    ];
    rows.into_iter()
        .map(|(uto_term, ns, local, kind)| AlignmentEntry {
            uto_term,
            external_iri: Iri::new(vocab::term(ns, local)).expect("alignment IRIs are valid"),
            kind,
        })
        .collect()
}

/// Builds the UTO schema with its alignment table.
pub fn load_schema() -> UtoSchema {
    let alignments = alignment_entries();
    let by_external = alignments
        .iter()
        .enumerate()
        .map(|(i, a)| (a.external_iri.as_str().to_string(), i))
        .collect();
    UtoSchema {
        concepts: concept_defs(),
        relations: relation_defs(),
        alignments,
        base_namespace: vocab::UTO.to_string(),
        by_external,
    }
}

/// Shared immutable copy of [`load_schema`].
pub fn builtin() -> &'static UtoSchema {
    static SCHEMA: OnceLock<UtoSchema> = OnceLock::new();
    SCHEMA.get_or_init(load_schema)
}
