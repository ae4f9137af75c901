//! Built-in person/organization vocabulary for synthetic benchmarks.

pub const ONTO: &str = "http://example.org/slcbench/onto#";
pub const BASE_NS: &str = "http://example.org/slcbench/base/";
pub const COPY_NS: &str = "http://example.org/slcbench/copy/";

/// Property linking a split value's holder to its fragments.
pub const PART_PROPERTY: &str = "valuePart";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueKind {
    /// Unique per instance.
    Identifier,
    Email,
    PersonName,
    OrgName,
    Date,
    Year,
    Url,
    /// Drawn from a small fixed pool.
    Category(&'static [&'static str]),
    /// Link to an organization.
    OrgLink,
}

#[derive(Debug, Clone, Copy)]
pub struct PropertyDef {
    pub local: &'static str,
    /// Name used when a structural transformation renames the property.
    pub renamed: &'static str,
    pub kind: ValueKind,
    /// Fraction of instances carrying the property.
    pub coverage: f64,
}

/// (concept, parent) pairs. Base instances are typed with leaves and roots.
pub const HIERARCHY: &[(&str, &str)] = &[
    ("Actor", "Person"),
    ("Athlete", "Person"),
    ("Company", "Organization"),
    ("Club", "Organization"),
];

pub const PERSON_TYPES: &[&str] = &["Actor", "Athlete", "Person"];
pub const ORG_TYPES: &[&str] = &["Company", "Club", "Organization"];

pub const GENDERS: &[&str] = &["female", "male"];
pub const NATIONALITIES: &[&str] = &[
    "Italian", "French", "German", "Spanish", "British", "American", "Japanese", "Brazilian",
];
pub const PROFESSIONS: &[&str] = &[
    "director", "producer", "player", "coach", "manager", "engineer", "writer",
];
pub const INDUSTRIES: &[&str] = &[
    "Finance", "Media", "Sports", "Retail", "Energy", "Software", "Transport", "Food",
];
pub const CITIES: &[&str] = &[
    "Milan", "Rome", "Paris", "Berlin", "Madrid", "London", "Boston", "Tokyo", "Lyon", "Turin",
    "Munich", "Seville",
];

pub const PERSON_PROPERTIES: &[PropertyDef] = &[
    PropertyDef { local: "personId", renamed: "identifier", kind: ValueKind::Identifier, coverage: 1.0 },
    PropertyDef { local: "name", renamed: "fullName", kind: ValueKind::PersonName, coverage: 1.0 },
    PropertyDef { local: "email", renamed: "mailbox", kind: ValueKind::Email, coverage: 0.65 },
    PropertyDef { local: "birthDate", renamed: "dateOfBirth", kind: ValueKind::Date, coverage: 0.6 },
    PropertyDef { local: "gender", renamed: "sex", kind: ValueKind::Category(GENDERS), coverage: 1.0 },
    PropertyDef { local: "nationality", renamed: "citizenship", kind: ValueKind::Category(NATIONALITIES), coverage: 0.8 },
    PropertyDef { local: "profession", renamed: "occupation", kind: ValueKind::Category(PROFESSIONS), coverage: 0.7 },
    PropertyDef { local: "worksFor", renamed: "employer", kind: ValueKind::OrgLink, coverage: 0.7 },
];

pub const ORG_PROPERTIES: &[PropertyDef] = &[
    PropertyDef { local: "orgName", renamed: "label", kind: ValueKind::OrgName, coverage: 1.0 },
    PropertyDef { local: "homepage", renamed: "website", kind: ValueKind::Url, coverage: 0.55 },
    PropertyDef { local: "foundedYear", renamed: "established", kind: ValueKind::Year, coverage: 0.75 },
    PropertyDef { local: "industry", renamed: "sector", kind: ValueKind::Category(INDUSTRIES), coverage: 1.0 },
    PropertyDef { local: "city", renamed: "location", kind: ValueKind::Category(CITIES), coverage: 0.8 },
];

pub fn all_properties() -> impl Iterator<Item = &'static PropertyDef> {
    PERSON_PROPERTIES.iter().chain(ORG_PROPERTIES)
}

pub fn parent_of(concept: &str) -> Option<&'static str> {
    HIERARCHY.iter().find(|(c, _)| *c == concept).map(|(_, p)| *p)
}

pub fn children_of(concept: &str) -> Vec<&'static str> {
    HIERARCHY
        .iter()
        .filter(|(_, p)| *p == concept)
        .map(|(c, _)| *c)
        .collect()
}

pub const FIRST_NAMES: &[&str] = &[
    "Anna", "Marco", "Giulia", "Luca", "Sofia", "Matteo", "Chiara", "Paolo", "Elena", "Davide",
    "Marie", "Pierre", "Claire", "Louis", "Emma", "Hans", "Greta", "Jonas", "Lena", "Felix",
    "Carmen", "Diego", "Lucia", "Pablo", "Isabel", "James", "Olivia", "Henry", "Grace", "Oscar",
    "Yuki", "Kenji", "Aiko", "Hiro", "Bruna", "Thiago", "Camila", "Rafael", "Nina", "Victor",
];

pub const LAST_NAMES: &[&str] = &[
    "Rossi", "Bianchi", "Romano", "Colombo", "Ricci", "Marino", "Greco", "Bruno", "Gallo", "Conti",
    "Martin", "Bernard", "Dubois", "Laurent", "Moreau", "Schmidt", "Fischer", "Weber", "Wagner",
    "Becker", "Garcia", "Lopez", "Sanchez", "Navarro", "Torres", "Smith", "Walker", "Wright",
    "Turner", "Parker", "Tanaka", "Suzuki", "Sato", "Ito", "Silva", "Santos", "Costa", "Pereira",
    "Moretti", "Esposito",
];

pub const ORG_WORDS: &[&str] = &[
    "Blue", "Northern", "Golden", "Royal", "United", "Atlas", "Vertex", "Silver", "Pioneer",
    "Summit", "Harbor", "Crystal", "Eagle", "Falcon", "Orion", "Zenith", "Union", "Sterling",
];

pub const ORG_NOUNS: &[&str] = &[
    "Capital", "Studios", "Motors", "Foods", "Systems", "Athletic", "Energy", "Media", "Logistics",
    "Partners", "Holdings", "Pictures", "Rovers", "Networks",
];

pub const ORG_SUFFIXES: &[&str] = &["Inc", "Ltd", "Group", "SpA", "GmbH", "Club", "Corp"];

pub const MAIL_DOMAINS: &[&str] = &["mail.com", "inbox.org", "post.net", "example.com"];
