use std::io::BufRead;

use log::warn;
use quick_xml::events::Event;
use quick_xml::Reader;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One `<page>` of a MediaWiki export, with the text of its latest revision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawPage {
    pub page_id: u64,
    pub title: String,
    pub namespace: i64,
    pub wikitext: String,
    pub is_redirect: bool,
}

#[derive(Default)]
struct PageBuilder {
    id: Option<String>,
    title: Option<String>,
    ns: Option<String>,
    redirect: bool,
    revision_text: Option<String>,
    latest_text: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Field {
    Id,
    Title,
    Ns,
    Text,
}

/// Streaming reader over the pages of an uncompressed MediaWiki XML dump.
///
/// Only the current page is held in memory. Pages without any `<text>` are
/// skipped with a warning; malformed XML ends the iteration with an
/// [`Error::Xml`] carrying the byte offset.
pub struct DumpReader<R: BufRead> {
    reader: Reader<R>,
    buf: Vec<u8>,
    stack: Vec<Vec<u8>>,
    page: Option<PageBuilder>,
    field: Option<(Field, String)>,
    seen_root: bool,
    finished: bool,
    skipped: usize,
}

/// Starts streaming `input`.
pub fn parse_dump<R: BufRead>(input: R) -> DumpReader<R> {
    DumpReader::new(input)
}

impl<R: BufRead> DumpReader<R> {
    pub fn new(input: R) -> Self {
        Self {
            reader: Reader::from_reader(input),
            buf: Vec::with_capacity(64 * 1024),
            stack: Vec::new(),
            page: None,
            field: None,
            seen_root: false,
            finished: false,
            skipped: 0,
        }
    }

    /// Pages dropped because they had no revision text, or no id or title.
    pub fn skipped(&self) -> usize {
        self.skipped
    }

    fn xml_error(&self, offset: u64, message: impl Into<String>) -> Error {
        Error::Xml {
            offset,
            message: message.into(),
        }
    }

    fn parent_is(&self, name: &[u8]) -> bool {
        self.stack.len() >= 2 && self.stack[self.stack.len() - 2] == name
    }

    fn open(&mut self, name: &[u8]) {
        let in_page = self.parent_is(b"page");
        let in_revision = self.parent_is(b"revision");
        let depth = self.stack.len();
        let Some(page) = self.page.as_mut() else {
            if name == b"page" && depth == 2 {
                self.page = Some(PageBuilder::default());
            }
            return;
        };
        match name {
            b"redirect" if in_page => page.redirect = true,
            b"revision" if in_page => page.revision_text = None,
            b"title" if in_page => self.field = Some((Field::Title, String::new())),
            b"ns" if in_page => self.field = Some((Field::Ns, String::new())),
            b"id" if in_page => self.field = Some((Field::Id, String::new())),
            b"text" if in_revision => self.field = Some((Field::Text, String::new())),
            _ => {}
        }
    }

    fn close(&mut self, name: &[u8]) -> Option<RawPage> {
        let in_page = self.parent_is(b"page");
        let depth = self.stack.len();
        if let Some((field, value)) = self.field.take() {
            if let Some(page) = self.page.as_mut() {
                match field {
                    Field::Id if page.id.is_none() => page.id = Some(value),
                    Field::Id => {}
                    Field::Title => page.title = Some(value),
                    Field::Ns => page.ns = Some(value),
                    Field::Text => page.revision_text = Some(value),
                }
            }
        }
        let page = self.page.as_mut()?;
        match name {
            b"revision" if in_page => {
                page.latest_text = page.revision_text.take();
                None
            }
            b"page" if depth == 2 => {
                let page = self.page.take()?;
                self.finish_page(page)
            }
            _ => None,
        }
    }

    fn finish_page(&mut self, page: PageBuilder) -> Option<RawPage> {
        let title = page.title.unwrap_or_default();
        let Some(page_id) = page.id.and_then(|id| id.trim().parse::<u64>().ok()) else {
            warn!("page `{title}` has no valid <id>, skipped");
            self.skipped += 1;
            return None;
        };
        if title.is_empty() || title.contains('\n') {
            warn!("page {page_id} has an invalid title, skipped");
            self.skipped += 1;
            return None;
        }
        let Some(wikitext) = page.latest_text else {
            warn!("page {page_id} `{title}` has no <text>, skipped");
            self.skipped += 1;
            return None;
        };
        let namespace = page
            .ns
            .and_then(|ns| ns.trim().parse::<i64>().ok())
            .unwrap_or(0);
        Some(RawPage {
            page_id,
            title,
            namespace,
            wikitext,
            is_redirect: page.redirect,
        })
    }

    fn step(&mut self) -> Result<Option<Option<RawPage>>> {
        self.buf.clear();
        let event = match self.reader.read_event_into(&mut self.buf) {
            Ok(ev) => ev,
            Err(e) => {
                let offset = self.reader.error_position();
                return Err(self.xml_error(offset, e.to_string()));
            }
        };
        match event {
            Event::Start(e) => {
                let name = e.name().as_ref().to_vec();
                if self.stack.is_empty() && self.seen_root {
                    let offset = self.reader.buffer_position();
                    return Err(self.xml_error(offset, "content after the root element"));
                }
                self.seen_root = true;
                self.stack.push(name.clone());
                self.open(&name);
            }
            Event::Empty(e) => {
                let name = e.name().as_ref().to_vec();
                if self.stack.is_empty() {
                    self.seen_root = true;
                    return Ok(None);
                }
                self.stack.push(name.clone());
                self.open(&name);
                let page = self.close(&name);
                self.stack.pop();
                return Ok(Some(page));
            }
            Event::End(e) => {
                let name = e.name().as_ref().to_vec();
                let page = self.close(&name);
                self.stack.pop();
                return Ok(Some(page));
            }
            Event::Text(t) => {
                if let Some((_, value)) = self.field.as_mut() {
                    let text = t.unescape().map_err(|e| Error::Xml {
                        offset: self.reader.buffer_position(),
                        message: e.to_string(),
                    })?;
                    value.push_str(&text);
                } else if self.stack.is_empty() && !t.iter().all(u8::is_ascii_whitespace) {
                    let offset = self.reader.buffer_position();
                    return Err(self.xml_error(offset, "text outside the root element"));
                }
            }
            Event::CData(t) => {
                if let Some((_, value)) = self.field.as_mut() {
                    value.push_str(&String::from_utf8_lossy(&t));
                }
            }
            Event::Eof => {
                let offset = self.reader.buffer_position();
                if let Some(open) = self.stack.last() {
                    let open = String::from_utf8_lossy(open).into_owned();
                    return Err(
                        self.xml_error(offset, format!("unexpected end of input inside <{open}>"))
                    );
                }
                if !self.seen_root {
                    return Err(self.xml_error(offset, "no root element"));
                }
                return Ok(None);
            }
            _ => {}
        }
        Ok(Some(None))
    }
}

impl<R: BufRead> Iterator for DumpReader<R> {
    type Item = Result<RawPage>;

    fn next(&mut self) -> Option<Self::Item> {
        while !self.finished {
            match self.step() {
                Ok(Some(Some(page))) => return Some(Ok(page)),
                Ok(Some(None)) => {}
                Ok(None) => self.finished = true,
                Err(e) => {
                    self.finished = true;
                    return Some(Err(e));
                }
            }
        }
        None
    }
}
