use std::fmt::Display;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    /// One `key=value` per line.
    Kv,
}

/// Ordered key/value report; repeated keys are allowed.
#[derive(Clone, Debug, Default)]
pub struct Report {
    title: String,
    fields: Vec<(String, String)>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Self { title: title.into(), fields: Vec::new() }
    }

    pub fn field(&mut self, key: &str, value: impl Display) -> &mut Self {
        let v = value.to_string().replace('\n', " ");
        self.fields.push((key.to_string(), v));
        self
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                out.push_str(&self.title);
                out.push('\n');
                let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.fields {
                    out.push_str(&format!("  {k:<width$}  {v}\n"));
                }
            }
            Format::Kv => {
                for (k, v) in &self.fields {
                    out.push_str(&format!("{k}={v}\n"));
                }
            }
        }
        out
    }
}

pub fn join<T: Display>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

pub fn vector<T: Display>(v: &[T]) -> String {
    format!("({})", join(v, ","))
}
