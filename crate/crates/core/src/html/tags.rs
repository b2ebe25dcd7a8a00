//! A forgiving start-tag scanner.
//!
//! It does not build a tree. It walks the markup, skips comments,
//! declarations and end tags, and yields start tags with their attributes.
//! Contents of raw-text elements (`script`, `style`, `textarea`, `title`) are
//! skipped so markup inside them never produces tags; for `title` the text is
//! captured. Unterminated constructs run to the end of input.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tag {
    pub name: String,
    pub attrs: Vec<(String, String)>,
    /// Raw text content, captured for `title` only.
    pub text: Option<String>,
}

impl Tag {
    /// First value of an attribute (names are lowercased at scan time).
    pub fn attr(&self, name: &str) -> Option<&str> {
        self.attrs
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_str())
    }
}

const RAW_TEXT: &[&str] = &["script", "style", "textarea", "title", "xmp"];

pub struct Tags<'a> {
    src: &'a str,
    pos: usize,
}

pub fn tags(src: &str) -> Tags<'_> {
    Tags { src, pos: 0 }
}

fn find_ci(haystack: &str, from: usize, needle: &str) -> Option<usize> {
    let hay = haystack.as_bytes();
    let needle = needle.as_bytes();
    if needle.is_empty() || hay.len() < needle.len() {
        return None;
    }
    (from..=hay.len() - needle.len()).find(|&i| hay[i..i + needle.len()].eq_ignore_ascii_case(needle))
}

impl Tags<'_> {
    fn skip_to(&mut self, from: usize, needle: &str) {
        self.pos = match self.src[from..].find(needle) {
            Some(i) => from + i + needle.len(),
            None => self.src.len(),
        };
    }

    fn parse_attrs(&mut self) -> Vec<(String, String)> {
        let bytes = self.src.as_bytes();
        let mut attrs = Vec::new();
        loop {
            while self.pos < bytes.len() && (bytes[self.pos].is_ascii_whitespace() || bytes[self.pos] == b'/') {
                self.pos += 1;
            }
            if self.pos >= bytes.len() {
                return attrs;
            }
            if bytes[self.pos] == b'>' {
                self.pos += 1;
                return attrs;
            }
            let start = self.pos;
            while self.pos < bytes.len()
                && !bytes[self.pos].is_ascii_whitespace()
                && !matches!(bytes[self.pos], b'=' | b'>' | b'/')
            {
                self.pos += 1;
            }
            let name = self.src[start..self.pos].to_ascii_lowercase();
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            let mut value = String::new();
            if self.pos < bytes.len() && bytes[self.pos] == b'=' {
                self.pos += 1;
                while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
                    self.pos += 1;
                }
                if self.pos < bytes.len() && matches!(bytes[self.pos], b'"' | b'\'') {
                    let quote = bytes[self.pos] as char;
                    let vstart = self.pos + 1;
                    let vend = self.src[vstart..].find(quote).map_or(bytes.len(), |i| vstart + i);
                    value = self.src[vstart..vend].to_string();
                    self.pos = (vend + 1).min(bytes.len());
                } else {
                    let vstart = self.pos;
                    while self.pos < bytes.len() && !bytes[self.pos].is_ascii_whitespace() && bytes[self.pos] != b'>' {
                        self.pos += 1;
                    }
                    value = self.src[vstart..self.pos].to_string();
                }
            }
            if !name.is_empty() {
                attrs.push((name, decode_entities(&value)));
            }
        }
    }
}

impl Iterator for Tags<'_> {
    type Item = Tag;

    fn next(&mut self) -> Option<Tag> {
        let bytes = self.src.as_bytes();
        loop {
            let lt = self.src[self.pos..].find('<')? + self.pos;
            let rest = &self.src[lt..];
            if rest.starts_with("<!--") {
                self.skip_to(lt + 4, "-->");
                continue;
            }
            if rest.starts_with("<!") || rest.starts_with("<?") || rest.starts_with("</") {
                self.skip_to(lt + 1, ">");
                continue;
            }
            let name_start = lt + 1;
            let mut name_end = name_start;
            if name_end < bytes.len() && bytes[name_end].is_ascii_alphabetic() {
                while name_end < bytes.len() && (bytes[name_end].is_ascii_alphanumeric() || bytes[name_end] == b'-') {
                    name_end += 1;
                }
            }
            if name_end == name_start {
                self.pos = lt + 1;
                continue;
            }
            let name = self.src[name_start..name_end].to_ascii_lowercase();
            self.pos = name_end;
            let attrs = self.parse_attrs();

            let mut text = None;
            if RAW_TEXT.contains(&name.as_str()) {
                let close = format!("</{name}");
                let end = find_ci(self.src, self.pos, &close).unwrap_or(self.src.len());
                if name == "title" {
                    text = Some(decode_entities(&self.src[self.pos..end]));
                }
                self.pos = end;
            }
            return Some(Tag { name, attrs, text });
        }
    }
}

/// Decodes the handful of character references that matter for URLs and titles.
pub fn decode_entities(s: &str) -> String {
    if !s.contains('&') {
        return s.to_string();
    }
    s.replace("&quot;", "\"")
        .replace("&#39;", "'")
        .replace("&#x27;", "'")
        .replace("&apos;", "'")
        .replace("&lt;", "<")
        .replace("&gt;", ">")
        .replace("&nbsp;", "\u{a0}")
        .replace("&amp;", "&")
}
