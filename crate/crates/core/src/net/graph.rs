//! Explicit port-graph view of a configuration: every agent occurrence
//! becomes a node and every wire is resolved to its two endpoints, looking
//! through name equations.

use std::collections::HashMap;

use super::{Configuration, NetTerm, Symbol};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    /// Port `port` of agent `agent`; port 0 is principal.
    Port { agent: usize, port: usize },
    Interface(usize),
    /// A name occurring exactly once.
    Free(String),
}

impl Endpoint {
    pub fn port(agent: usize, port: usize) -> Self {
        Endpoint::Port { agent, port }
    }
}

/// Temporary endpoints while building: the two sides of equation `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Half {
    Real(Endpoint),
    Side(usize, u8),
}

#[derive(Clone, Debug, Default)]
pub struct PortGraph {
    agents: Vec<Symbol>,
    /// Partner of each port, per agent.
    ports: Vec<Vec<Endpoint>>,
    interface: Vec<Endpoint>,
    /// Name attached directly at an auxiliary port, if any.
    port_names: HashMap<(usize, usize), String>,
    /// A human-readable label for the wire at each agent port.
    labels: HashMap<(usize, usize), String>,
    free: Vec<String>,
}

struct Builder {
    agents: Vec<Symbol>,
    links: HashMap<Half, (Half, Option<String>)>,
    pending: HashMap<String, Half>,
    port_names: HashMap<(usize, usize), String>,
    free: Vec<String>,
}

impl Builder {
    fn connect(&mut self, a: Half, b: Half, label: Option<String>) {
        self.links.insert(a.clone(), (b.clone(), label.clone()));
        self.links.insert(b, (a, label));
    }

    fn attach(&mut self, t: &NetTerm, at: Half) {
        match t {
            NetTerm::Agent(s, ports) => {
                let id = self.agents.len();
                self.agents.push(*s);
                self.connect(at, Half::Real(Endpoint::port(id, 0)), None);
                for (i, p) in ports.iter().enumerate() {
                    if let NetTerm::Name(n) = p {
                        self.port_names.insert((id, i + 1), n.clone());
                    }
                    self.attach(p, Half::Real(Endpoint::port(id, i + 1)));
                }
            }
            NetTerm::Name(n) => match self.pending.remove(n) {
                Some(other) => self.connect(at, other, Some(n.clone())),
                None => {
                    self.pending.insert(n.clone(), at);
                }
            },
        }
    }
}

impl PortGraph {
    pub fn build(config: &Configuration) -> PortGraph {
        let mut b = Builder {
            agents: Vec::new(),
            links: HashMap::new(),
            pending: HashMap::new(),
            port_names: HashMap::new(),
            free: Vec::new(),
        };
        for (i, t) in config.interface.iter().enumerate() {
            b.attach(t, Half::Real(Endpoint::Interface(i)));
        }
        for (k, e) in config.equations.iter().enumerate() {
            b.attach(&e.lhs, Half::Side(k, 0));
            b.attach(&e.rhs, Half::Side(k, 1));
        }
        let mut pending: Vec<(String, Half)> = b.pending.drain().collect();
        pending.sort_by(|a, b| a.0.cmp(&b.0));
        for (n, at) in pending {
            b.free.push(n.clone());
            b.connect(at, Half::Real(Endpoint::Free(n.clone())), Some(n));
        }

        // Walk through equation sides until a real endpoint is reached.
        let resolve = |start: &Half| -> (Endpoint, Option<String>) {
            let (mut cur, mut label) = b.links[start].clone();
            while let Half::Side(k, s) = cur {
                let (next, l) = b.links[&Half::Side(k, 1 - s)].clone();
                label = label.or(l);
                cur = next;
            }
            match cur {
                Half::Real(e) => (e, label),
                Half::Side(..) => unreachable!(),
            }
        };

        let mut g = PortGraph {
            agents: b.agents.clone(),
            ports: Vec::with_capacity(b.agents.len()),
            interface: Vec::new(),
            port_names: b.port_names.clone(),
            labels: HashMap::new(),
            free: b.free.clone(),
        };
        for (id, s) in b.agents.iter().enumerate() {
            let mut partners = Vec::with_capacity(s.arity() + 1);
            for p in 0..=s.arity() {
                let (e, label) = resolve(&Half::Real(Endpoint::port(id, p)));
                if let Some(l) = label {
                    g.labels.insert((id, p), l);
                }
                partners.push(e);
            }
            g.ports.push(partners);
        }
        for i in 0..config.interface.len() {
            g.interface.push(resolve(&Half::Real(Endpoint::Interface(i))).0);
        }
        g
    }

    pub fn agent_count(&self) -> usize {
        self.agents.len()
    }

    pub fn symbol(&self, agent: usize) -> Symbol {
        self.agents[agent]
    }

    pub fn interface(&self) -> &[Endpoint] {
        &self.interface
    }

    /// Names that occur once in the configuration, sorted.
    pub fn free_names(&self) -> &[String] {
        &self.free
    }

    pub fn partner(&self, e: &Endpoint) -> Endpoint {
        match e {
            Endpoint::Port { agent, port } => self.ports[*agent][*port].clone(),
            Endpoint::Interface(i) => self.interface[*i].clone(),
            Endpoint::Free(n) => self.find_free_partner(n),
        }
    }

    fn find_free_partner(&self, n: &str) -> Endpoint {
        let target = Endpoint::Free(n.to_owned());
        for (a, ps) in self.ports.iter().enumerate() {
            if let Some(p) = ps.iter().position(|e| *e == target) {
                return Endpoint::port(a, p);
            }
        }
        self.interface
            .iter()
            .position(|e| *e == target)
            .map(Endpoint::Interface)
            .unwrap_or_else(|| {
                // Free name bound only to another free name.
                target
            })
    }

    /// The name written directly at an auxiliary port, if the term had one.
    pub fn port_name(&self, agent: usize, port: usize) -> Option<&str> {
        self.port_names.get(&(agent, port)).map(String::as_str)
    }

    pub fn wire_label(&self, agent: usize, port: usize) -> Option<&str> {
        self.labels.get(&(agent, port)).map(String::as_str)
    }

    /// Every wire with at least one agent endpoint, each listed once, in
    /// agent/port order.
    pub fn wires(&self) -> Vec<(Endpoint, Endpoint)> {
        let mut out = Vec::new();
        for (a, ps) in self.ports.iter().enumerate() {
            for (p, other) in ps.iter().enumerate() {
                let here = Endpoint::port(a, p);
                let keep = match other {
                    Endpoint::Port { .. } => here <= *other,
                    _ => true,
                };
                if keep {
                    out.push((here, other.clone()));
                }
            }
        }
        out
    }
}
