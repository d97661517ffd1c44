//! Corpus model: tokens, sentences, documents, and the filtered word stream
//! that feeds the lexical metric.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use unicode_properties::{GeneralCategory, GeneralCategoryGroup, UnicodeGeneralCategory};

use crate::error::{Error, Result};

/// The 17 Universal Dependencies part-of-speech tags.
///
/// Declared alphabetically so the derived ordering and the discriminant used
/// as a kernel label id are both stable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Upos {
    Adj,
    Adp,
    Adv,
    Aux,
    Cconj,
    Det,
    Intj,
    Noun,
    Num,
    Part,
    Pron,
    Propn,
    Punct,
    Sconj,
    Sym,
    Verb,
    X,
}

impl Upos {
    pub const ALL: [Upos; 17] = [
        Upos::Adj,
        Upos::Adp,
        Upos::Adv,
        Upos::Aux,
        Upos::Cconj,
        Upos::Det,
        Upos::Intj,
        Upos::Noun,
        Upos::Num,
        Upos::Part,
        Upos::Pron,
        Upos::Propn,
        Upos::Punct,
        Upos::Sconj,
        Upos::Sym,
        Upos::Verb,
        Upos::X,
    ];

    pub(crate) const COUNT: u32 = 17;

    pub fn as_str(self) -> &'static str {
        match self {
            Upos::Adj => "ADJ",
            Upos::Adp => "ADP",
            Upos::Adv => "ADV",
            Upos::Aux => "AUX",
            Upos::Cconj => "CCONJ",
            Upos::Det => "DET",
            Upos::Intj => "INTJ",
            Upos::Noun => "NOUN",
            Upos::Num => "NUM",
            Upos::Part => "PART",
            Upos::Pron => "PRON",
            Upos::Propn => "PROPN",
            Upos::Punct => "PUNCT",
            Upos::Sconj => "SCONJ",
            Upos::Sym => "SYM",
            Upos::Verb => "VERB",
            Upos::X => "X",
        }
    }
}

impl FromStr for Upos {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ADJ" => Ok(Upos::Adj),
            "ADP" => Ok(Upos::Adp),
            "ADV" => Ok(Upos::Adv),
            "AUX" => Ok(Upos::Aux),
            "CCONJ" => Ok(Upos::Cconj),
            "DET" => Ok(Upos::Det),
            "INTJ" => Ok(Upos::Intj),
            "NOUN" => Ok(Upos::Noun),
            "NUM" => Ok(Upos::Num),
            "PART" => Ok(Upos::Part),
            "PRON" => Ok(Upos::Pron),
            "PROPN" => Ok(Upos::Propn),
            "PUNCT" => Ok(Upos::Punct),
            "SCONJ" => Ok(Upos::Sconj),
            "SYM" => Ok(Upos::Sym),
            "VERB" => Ok(Upos::Verb),
            "X" => Ok(Upos::X),
            _ => Err(Error::InvalidUpos(s.to_string())),
        }
    }
}

impl fmt::Display for Upos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A surface token with its Unicode classification.
///
/// `is_punct` is true when every char is punctuation or symbol (categories
/// P* or S*); `is_digit` when every char is a decimal digit (Nd). Mixed
/// alphanumeric surfaces like `B2B` are neither.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    surface: String,
    is_punct: bool,
    is_digit: bool,
}

impl Token {
    pub fn new(surface: impl Into<String>) -> Result<Self> {
        let surface = surface.into();
        if surface.is_empty() {
            return Err(Error::EmptySurface);
        }
        let is_punct = surface.chars().all(|c| {
            matches!(
                c.general_category_group(),
                GeneralCategoryGroup::Punctuation | GeneralCategoryGroup::Symbol
            )
        });
        let is_digit = surface
            .chars()
            .all(|c| c.general_category() == GeneralCategory::DecimalNumber);
        Ok(Token {
            surface,
            is_punct,
            is_digit,
        })
    }

    pub fn surface(&self) -> &str {
        &self.surface
    }

    pub fn is_punct(&self) -> bool {
        self.is_punct
    }

    pub fn is_digit(&self) -> bool {
        self.is_digit
    }
}

/// A token with dependency annotations. `head` is 0 for the root, otherwise
/// the 1-based index of the parent within the sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedToken {
    token: Token,
    upos: Upos,
    head: u32,
    deprel: String,
}

impl AnnotatedToken {
    pub fn new(token: Token, upos: Upos, head: u32, deprel: impl Into<String>) -> Self {
        AnnotatedToken {
            token,
            upos,
            head,
            deprel: deprel.into(),
        }
    }

    pub fn token(&self) -> &Token {
        &self.token
    }

    pub fn upos(&self) -> Upos {
        self.upos
    }

    pub fn head(&self) -> u32 {
        self.head
    }

    pub fn deprel(&self) -> &str {
        &self.deprel
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum SentenceTokens {
    Plain(Vec<Token>),
    Annotated(Vec<AnnotatedToken>),
}

/// A non-empty sentence, either plain (tokenized only) or annotated with a
/// validated dependency tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    id: String,
    tokens: SentenceTokens,
}

impl Sentence {
    pub fn plain(id: impl Into<String>, tokens: Vec<Token>) -> Result<Self> {
        let id = id.into();
        if tokens.is_empty() {
            return Err(Error::EmptySentence(id));
        }
        Ok(Sentence {
            id,
            tokens: SentenceTokens::Plain(tokens),
        })
    }

    /// Builds an annotated sentence, rejecting head links that do not form a
    /// single tree rooted at the unique head-0 token.
    pub fn annotated(id: impl Into<String>, tokens: Vec<AnnotatedToken>) -> Result<Self> {
        let id = id.into();
        if tokens.is_empty() {
            return Err(Error::EmptySentence(id));
        }
        validate_tree(&id, &tokens)?;
        Ok(Sentence {
            id,
            tokens: SentenceTokens::Annotated(tokens),
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn len(&self) -> usize {
        match &self.tokens {
            SentenceTokens::Plain(t) => t.len(),
            SentenceTokens::Annotated(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_annotated(&self) -> bool {
        matches!(self.tokens, SentenceTokens::Annotated(_))
    }

    pub fn annotated_tokens(&self) -> Option<&[AnnotatedToken]> {
        match &self.tokens {
            SentenceTokens::Plain(_) => None,
            SentenceTokens::Annotated(t) => Some(t),
        }
    }

    /// Surface tokens in order, regardless of annotation.
    pub fn tokens(&self) -> impl Iterator<Item = &Token> + '_ {
        let (plain, annotated) = match &self.tokens {
            SentenceTokens::Plain(t) => (Some(t), None),
            SentenceTokens::Annotated(t) => (None, Some(t)),
        };
        plain
            .into_iter()
            .flatten()
            .chain(annotated.into_iter().flatten().map(AnnotatedToken::token))
    }
}

fn validate_tree(id: &str, tokens: &[AnnotatedToken]) -> Result<()> {
    let n = tokens.len();
    let mut root = None;
    for (i, tok) in tokens.iter().enumerate() {
        let head = tok.head() as usize;
        if head > n {
            return Err(Error::HeadOutOfRange {
                id: id.to_string(),
                head: tok.head(),
                len: n,
            });
        }
        if head == i + 1 {
            return Err(Error::NotATree(id.to_string()));
        }
        if head == 0 {
            if root.is_some() {
                return Err(Error::NotATree(id.to_string()));
            }
            root = Some(i);
        }
    }
    let Some(root) = root else {
        return Err(Error::NotATree(id.to_string()));
    };

    let mut children = vec![Vec::new(); n];
    for (i, tok) in tokens.iter().enumerate() {
        if tok.head() > 0 {
            children[tok.head() as usize - 1].push(i);
        }
    }
    let mut seen = vec![false; n];
    let mut stack = vec![root];
    seen[root] = true;
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for &c in &children[v] {
            if !seen[c] {
                seen[c] = true;
                reached += 1;
                stack.push(c);
            }
        }
    }
    if reached != n {
        return Err(Error::NotATree(id.to_string()));
    }
    Ok(())
}

/// A non-empty, ordered group of sentences sharing a document id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    id: String,
    sentences: Vec<Sentence>,
}

impl Document {
    pub fn new(id: impl Into<String>, sentences: Vec<Sentence>) -> Result<Self> {
        let id = id.into();
        if sentences.is_empty() {
            return Err(Error::EmptyDocument(id));
        }
        Ok(Document { id, sentences })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn sentences(&self) -> &[Sentence] {
        &self.sentences
    }
}

/// An ordered collection of documents with unique ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    language: String,
    documents: Vec<Document>,
}

impl Corpus {
    pub fn new(language: impl Into<String>, documents: Vec<Document>) -> Result<Self> {
        if documents.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        let mut ids = alloc::collections::BTreeSet::new();
        for doc in &documents {
            if !ids.insert(doc.id()) {
                return Err(Error::DuplicateDocId(doc.id().to_string()));
            }
        }
        Ok(Corpus {
            language: language.into(),
            documents,
        })
    }

    pub fn language(&self) -> &str {
        &self.language
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn num_documents(&self) -> usize {
        self.documents.len()
    }

    pub fn num_sentences(&self) -> usize {
        self.documents.iter().map(|d| d.sentences().len()).sum()
    }

    /// Sentences in document order.
    pub fn sentences(&self) -> impl Iterator<Item = &Sentence> + '_ {
        self.documents.iter().flat_map(|d| d.sentences().iter())
    }

    /// Clones the documents at `indices`, in the order given.
    ///
    /// Panics if an index is out of bounds; callers draw indices from this
    /// corpus. Duplicate indices would collide on document ids and are a
    /// caller bug as well.
    pub fn subset(&self, indices: &[usize]) -> Corpus {
        let documents = indices
            .iter()
            .map(|&i| self.documents[i].clone())
            .collect();
        Corpus {
            language: self.language.clone(),
            documents,
        }
    }
}

/// Flattens a corpus into its lexical word stream: surfaces in document
/// order, dropping pure-punctuation and pure-digit tokens, optionally case
/// folded. Stopwords are kept on purpose; function-word frequencies carry
/// signal for this metric.
pub fn lexical_word_stream(corpus: &Corpus, fold_case: bool) -> Result<Vec<String>> {
    let mut words = Vec::new();
    for sentence in corpus.sentences() {
        for token in sentence.tokens() {
            if token.is_punct() || token.is_digit() {
                continue;
            }
            if fold_case {
                words.push(token.surface().to_lowercase());
            } else {
                words.push(token.surface().to_string());
            }
        }
    }
    if words.is_empty() {
        return Err(Error::EmptyStream);
    }
    Ok(words)
}
