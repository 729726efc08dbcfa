#![allow(dead_code)]

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use threadmotif::to_json_line;
use threadmotif_core::{Post, Source, Thread};

/// Eight posts by five users: red opens, blue/green/yellow/purple reply to
/// the root, red answers yellow and purple, yellow answers red again.
pub fn fig2_thread() -> Thread {
    Thread::new(
        "fig2",
        Source::Focus,
        vec![
            Post::new("1", None, "red", 0),
            Post::new("2", Some("1"), "blue", 10),
            Post::new("3", Some("1"), "green", 20),
            Post::new("4", Some("1"), "yellow", 30),
            Post::new("5", Some("1"), "purple", 40),
            Post::new("6", Some("4"), "red", 50),
            Post::new("7", Some("5"), "red", 60),
            Post::new("8", Some("6"), "yellow", 70),
        ],
    )
    .unwrap()
}

/// Root plus `replies` direct replies by distinct users.
pub fn star_thread(id: &str, replies: usize, root_author: &str) -> Thread {
    let mut posts = vec![Post::new("r", None, root_author, 0)];
    for i in 0..replies {
        posts.push(Post::new(&format!("p{i}"), Some("r"), &format!("u{i}"), 10 * (i as i64 + 1)));
    }
    Thread::new(id, Source::Baseline, posts).unwrap()
}

pub fn write_corpus(path: &Path, threads: &[Thread]) {
    let mut f = std::fs::File::create(path).unwrap();
    for t in threads {
        writeln!(f, "{}", to_json_line(t)).unwrap();
    }
}

/// Synthetic conversation generator.
///
/// Each thread has `1..=39` responders who each post at least once, a few
/// extra responder posts, and occasional OP follow-ups. Replies go to the
/// root half of the time, otherwise to a uniformly chosen earlier post.
/// With `op_answers_everyone`, the OP additionally replies to the first
/// post of every responder.
pub struct Generator {
    pub op_answers_everyone: bool,
    pub op_reply_rate: f64,
}

impl Generator {
    pub fn thread(&self, rng: &mut impl Rng, id: &str, source: Source) -> Thread {
        let responders = rng.random_range(1..=39usize);
        let mut authors: Vec<String> = (0..responders).map(|i| format!("u{i}")).collect();
        let extra = rng.random_range(0..=responders / 2).max(5usize.saturating_sub(responders));
        for _ in 0..extra {
            let who = authors[rng.random_range(0..responders)].clone();
            authors.push(who);
        }
        // keep every responder's first appearance but randomize the order
        let (first, rest) = authors.split_at_mut(responders);
        first.shuffle(rng);
        rest.shuffle(rng);

        let mut posts = vec![Post::new("p0", None, "op", 0)];
        let mut t = 0;
        let mut first_post: Vec<(String, usize)> = Vec::new();
        for author in authors {
            t += rng.random_range(1..600);
            let parent = if rng.random_bool(0.5) { 0 } else { rng.random_range(0..posts.len()) };
            let idx = posts.len();
            let parent_id = posts[parent].id.clone();
            posts.push(Post::new(&format!("p{idx}"), Some(&parent_id), &author, t));
            if !first_post.iter().any(|(a, _)| *a == author) {
                first_post.push((author.clone(), idx));
            }
            if rng.random_bool(self.op_reply_rate) {
                let target = posts.choose(rng).unwrap().id.clone();
                t += rng.random_range(1..600);
                let idx = posts.len();
                posts.push(Post::new(&format!("p{idx}"), Some(&target), "op", t));
            }
        }
        if self.op_answers_everyone {
            for (_, idx) in first_post {
                t += rng.random_range(1..600);
                let target = posts[idx].id.clone();
                let n = posts.len();
                posts.push(Post::new(&format!("p{n}"), Some(&target), "op", t));
            }
        }
        Thread::new(id, source, posts).unwrap()
    }

    pub fn corpus(&self, seed: u64, n: usize, source: Source) -> Vec<Thread> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|i| self.thread(&mut rng, &format!("{}{i}", source.as_str()), source)).collect()
    }
}

pub fn baseline_generator() -> Generator {
    Generator { op_answers_everyone: false, op_reply_rate: 0.2 }
}

pub fn focus_generator() -> Generator {
    Generator { op_answers_everyone: true, op_reply_rate: 0.2 }
}

pub fn bin_path() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_threadmotif"))
}

pub fn run_cli(args: &[&str]) -> Output {
    Command::new(bin_path()).args(args).output().unwrap()
}

pub fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}
